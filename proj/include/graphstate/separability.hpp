// Copyright 2026 The graphstate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphstate/error.hpp"
#include "graphstate/graph.hpp"
#include "graphstate/products.hpp"
#include "graphstate/spectra.hpp"
#include "graphstate/state.hpp"

namespace graphstate {

enum class Verdict { Separable, Entangled, Inconclusive };

constexpr std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Separable: return "Separable";
        case Verdict::Entangled: return "Entangled";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

struct SeparabilityVerdict {
    Verdict verdict = Verdict::Inconclusive;
    std::string method;   // "degree", "ppt" or "partner-edges"
    std::string witness;  // short reason, empty when there is nothing to show
    std::optional<Vertex> position;
    std::optional<double> value;
};

/// (i, j)(k, l) entry moves to (i, l)(k, j): transpose over the second factor.
inline Matrix partial_transpose_matrix(const Matrix &m, BipartiteShape shape) {
    require_shape(m.rows(), shape);
    const auto [p, q] = shape;
    Matrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            for (std::size_t k = 0; k < p; ++k) {
                for (std::size_t l = 0; l < q; ++l) {
                    r(i * q + l, k * q + j) = m(i * q + j, k * q + l);
                }
            }
        }
    }
    return r;
}

/// Edge {ij, kl} becomes {il, kj}. An involution on loop-free graphs.
inline WeightedGraph partial_transpose_graph(const WeightedGraph &g, BipartiteShape shape) {
    require_shape(g.n(), shape);
    if (!g.is_loop_free()) {
        throw Error(ErrorKind::HasLoops, "partial transpose of a graph needs a loop-free graph");
    }
    const std::size_t q = shape.q;
    GraphBuilder b(g.convention(), g.n());
    for (const auto &[key, w] : g.edges()) {
        const std::size_t i = key.first / q, j = key.first % q;
        const std::size_t k = key.second / q, l = key.second % q;
        b.add_edge(i * q + l, k * q + j, w);
    }
    return b.build();
}

/// A loop-free real graph whose degrees change under partial transposition
/// is entangled. Equal degrees prove nothing.
inline SeparabilityVerdict degree_criterion(const WeightedGraph &g, BipartiteShape shape) {
    if (g.convention() != Convention::RealSigned) {
        throw Error(ErrorKind::ComplexNotSupported, "degree criterion needs real weights");
    }
    const auto before = degrees(g);
    const auto after = degrees(partial_transpose_graph(g, shape));
    double scale = 1.0;
    for (double x : before) {
        scale = std::max(scale, std::abs(x));
    }
    for (Vertex v = 0; v < g.n(); ++v) {
        if (std::abs(before[v] - after[v]) > 1e-12 * scale) {
            return {Verdict::Entangled, "degree", "degree changes under partial transpose", v, after[v] - before[v]};
        }
    }
    return {Verdict::Inconclusive, "degree", "", std::nullopt, std::nullopt};
}

/// Reference test on the matrix: a negative eigenvalue of the partial
/// transpose means entangled; a positive one is conclusive only up to 2x3.
inline SeparabilityVerdict ppt_oracle(const DensityMatrix &sigma, BipartiteShape shape) {
    const HermitianMatrix pt(partial_transpose_matrix(sigma.matrix(), shape));
    const double lo = min_eigenvalue(pt);
    if (lo < -psd_tolerance(pt)) {
        return {Verdict::Entangled, "ppt", "negative eigenvalue of the partial transpose", std::nullopt, lo};
    }
    if (shape.p * shape.q <= 6) {
        return {Verdict::Separable, "ppt", "positive partial transpose", std::nullopt, lo};
    }
    return {Verdict::Inconclusive, "ppt", "positive partial transpose", std::nullopt, lo};
}

/// Separable when every edge {ij, kl} with i != k and j != l has a partner
/// {il, kj} of equal weight, which pairs the terms into product projectors.
/// That pairing needs positive weights; with signed weights the graph is
/// still invariant under partial transposition, which settles it up to 2x3.
inline SeparabilityVerdict partner_edge_criterion(const WeightedGraph &g, BipartiteShape shape) {
    if (g.convention() != Convention::RealSigned) {
        throw Error(ErrorKind::ComplexNotSupported, "partner-edge criterion needs real weights");
    }
    require_shape(g.n(), shape);
    (void)density_from_graph(g);
    const std::size_t q = shape.q;
    double scale = 0;
    for (const auto &[key, w] : g.edges()) {
        scale = std::max(scale, std::abs(w));
    }
    bool positive = true;
    for (const auto &[key, w] : g.edges()) {
        positive = positive && w.real() > 0;
        const std::size_t i = key.first / q, j = key.first % q;
        const std::size_t k = key.second / q, l = key.second % q;
        if (i == k || j == l) {
            continue;
        }
        const Complex partner = g.weight(i * q + l, k * q + j);
        if (std::abs(partner - w) > 1e-12 * scale) {
            return {Verdict::Inconclusive, "partner-edges", "edge without an equal partner", key.first,
                    w.real()};
        }
    }
    for (const auto &[v, w] : g.loops()) {
        positive = positive && w > 0;
    }
    if (positive || shape.p * shape.q <= 6) {
        return {Verdict::Separable, "partner-edges", "cross edges pair up", std::nullopt, std::nullopt};
    }
    return {Verdict::Inconclusive, "partner-edges", "cross edges pair up but weights are signed", std::nullopt,
            std::nullopt};
}

struct ProductTerm {
    double weight;
    std::vector<WeightedGraph> factors;
};

/// Graph of sum_i w_i (x)_j sigma(g_i^j), built from modified tensor products.
inline WeightedGraph build_separable(std::span<const ProductTerm> terms) {
    if (terms.empty()) {
        throw Error(ErrorKind::BadWeights, "no terms given");
    }
    const auto &shape = terms.front().factors;
    std::vector<double> weights;
    std::vector<WeightedGraph> products;
    for (const auto &t : terms) {
        if (t.factors.empty() || t.factors.size() != shape.size()) {
            throw Error(ErrorKind::DimensionMismatch, "terms have different numbers of factors");
        }
        for (std::size_t j = 0; j < shape.size(); ++j) {
            if (t.factors[j].n() != shape[j].n()) {
                throw Error(ErrorKind::DimensionMismatch, "factor dimensions differ between terms");
            }
        }
        WeightedGraph prod = t.factors.front();
        for (std::size_t j = 1; j < t.factors.size(); ++j) {
            prod = modified_tensor(prod, t.factors[j]);
        }
        weights.push_back(t.weight);
        products.push_back(std::move(prod));
    }
    return mix(std::span<const double>(weights), std::span<const WeightedGraph>(products));
}

/// One-line text record, e.g. "method=ppt verdict=Entangled value=-0.125".
inline std::string to_record(const SeparabilityVerdict &v) {
    std::string out = "method=" + v.method + " verdict=" + std::string(to_string(v.verdict));
    if (v.position) {
        out += " vertex=" + std::to_string(*v.position + 1);
    }
    if (v.value) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", *v.value == 0.0 ? 0.0 : *v.value);
        out += " value=" + std::string(buf);
    }
    if (!v.witness.empty()) {
        out += " reason=\"" + v.witness + "\"";
    }
    return out;
}

}  // namespace graphstate
