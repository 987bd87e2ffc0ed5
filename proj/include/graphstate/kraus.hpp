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
#include <numbers>
#include <optional>
#include <vector>

#include "graphstate/error.hpp"
#include "graphstate/graph.hpp"
#include "graphstate/matrix.hpp"
#include "graphstate/state.hpp"

namespace graphstate {

struct KrausOperator {
    Matrix op;
    std::optional<Matrix> unitary;  // U with op = sqrt(p) U P[b], when the operator has that form
};

/// Signed Kraus set: rho -> sum A rho A^dag - sum B rho B^dag, with
/// sum A^dag A - sum B^dag B = I for a trace-preserving map.
struct KrausSet {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    std::vector<KrausOperator> positive;  // A
    std::vector<KrausOperator> negative;  // B
};

inline Matrix apply(const KrausSet &k, const Matrix &rho) {
    Matrix out(k.out_dim, k.out_dim);
    for (const auto &a : k.positive) {
        out += a.op * rho * a.op.adjoint();
    }
    for (const auto &b : k.negative) {
        out -= b.op * rho * b.op.adjoint();
    }
    return out;
}

inline Matrix completeness(const KrausSet &k) {
    Matrix out(k.in_dim, k.in_dim);
    for (const auto &a : k.positive) {
        out += a.op.adjoint() * a.op;
    }
    for (const auto &b : k.negative) {
        out -= b.op.adjoint() * b.op;
    }
    return out;
}

/// <b| sigma |b> for each basis vector.
inline std::vector<double> click_probabilities(const DensityMatrix &sigma, const std::vector<Vector> &basis) {
    std::vector<double> out;
    for (const auto &b : basis) {
        out.push_back(std::real(inner(b, sigma.matrix() * b)));
    }
    return out;
}

namespace detail {

// Orthonormal basis whose first column is `first`, completed by Gram-Schmidt
// over the standard basis in index order (two passes for accuracy).
inline Matrix completed_basis(const Vector &first) {
    const std::size_t n = first.size();
    std::vector<Vector> cols;
    auto add = [&](Vector v) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &c : cols) {
                const Complex proj = inner(c, v);
                for (std::size_t i = 0; i < n; ++i) {
                    v[i] -= proj * c[i];
                }
            }
        }
        const double nrm = norm(v);
        if (nrm < 1e-6) {
            return;
        }
        for (auto &z : v) {
            z /= nrm;
        }
        cols.push_back(std::move(v));
    };
    add(first);
    for (std::size_t k = 0; k < n && cols.size() < n; ++k) {
        add(basis_vector(n, k));
    }
    Matrix w(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            w(r, c) = cols[c][r];
        }
    }
    return w;
}

/// Unitary taking unit vector `from` to unit vector `to`.
inline Matrix unitary_taking(const Vector &from, const Vector &to) {
    return completed_basis(to) * completed_basis(from).adjoint();
}

inline Vector edge_state(std::size_t n, Vertex i, Vertex j, double sign) {
    Vector v(n);
    v[i] = std::numbers::sqrt2 / 2.0;
    v[j] = sign * std::numbers::sqrt2 / 2.0;
    return v;
}

inline void require_real(const WeightedGraph &g) {
    if (g.convention() != Convention::RealSigned) {
        throw Error(ErrorKind::ComplexNotSupported, "graph edits are defined for real weights");
    }
}

inline void require_vertex(const WeightedGraph &g, Vertex v) {
    if (v >= g.n()) {
        throw Error(ErrorKind::InvalidGraph, "vertex out of range");
    }
}

inline bool has_negative_edge(const WeightedGraph &g) {
    for (const auto &[k, w] : g.edges()) {
        if (w.real() < 0) {
            return true;
        }
    }
    return false;
}

// Drops every loop, then puts loops of 2|a| on both ends of each negative edge.
inline WeightedGraph reloop_negative_edges(const WeightedGraph &g) {
    GraphBuilder b(g.convention(), g.n());
    for (const auto &[k, w] : g.edges()) {
        b.add_edge(k.first, k.second, w);
        if (w.real() < 0) {
            b.add_loop(k.first, 2.0 * std::abs(w));
            b.add_loop(k.second, 2.0 * std::abs(w));
        }
    }
    return b.build();
}

inline WeightedGraph without_edge(const WeightedGraph &g, Vertex u, Vertex v) {
    GraphBuilder b(g.convention(), g.n());
    for (const auto &[k, w] : g.edges()) {
        if (k != VertexPair{std::min(u, v), std::max(u, v)}) {
            b.add_edge(k.first, k.second, w);
        }
    }
    for (const auto &[x, w] : g.loops()) {
        b.add_loop(x, w);
    }
    return b.build();
}

}  // namespace detail

/// Basis measured before an edit on edge {u, v}: (|u> + |v>)/sqrt2,
/// (|u> - |v>)/sqrt2, then |i> for every other vertex in order.
inline std::vector<Vector> edge_measurement_basis(std::size_t n, Vertex u, Vertex v) {
    std::vector<Vector> basis{detail::edge_state(n, u, v, 1.0), detail::edge_state(n, u, v, -1.0)};
    for (Vertex i = 0; i < n; ++i) {
        if (i != u && i != v) {
            basis.push_back(basis_vector(n, i));
        }
    }
    return basis;
}

inline std::vector<Vector> standard_basis(std::size_t n) {
    std::vector<Vector> basis;
    for (Vertex i = 0; i < n; ++i) {
        basis.push_back(basis_vector(n, i));
    }
    return basis;
}

struct QuantumOperation {
    KrausSet kraus;
    WeightedGraph result;
    std::vector<Vector> basis;  // measurement basis the operators start from
};

/// Measure in `basis`, then prepare sigma(target): every pair of basis
/// vector b and term c of the target's projector expansion gives
/// sqrt(|w_c| / d') U P[b] with U b = c. Negative terms go to the B family.
inline KrausSet preparation_kraus(const WeightedGraph &target, const std::vector<Vector> &basis) {
    (void)density_from_graph(target);
    const double d = degree_sum(target);
    const std::size_t n = target.n();

    struct Term {
        Vector state;
        double weight;
    };
    std::vector<Term> terms;
    for (const auto &[k, w] : target.edges()) {
        terms.push_back({detail::edge_state(n, k.first, k.second, -1.0), 2.0 * w.real()});
    }
    for (const auto &[v, w] : target.loops()) {
        terms.push_back({basis_vector(n, v), w});
    }

    KrausSet out{n, n, {}, {}};
    for (const auto &b : basis) {
        const Matrix pb = outer(b, b);
        for (const auto &t : terms) {
            Matrix u = detail::unitary_taking(b, t.state);
            Matrix op = u * pb * Complex(std::sqrt(std::abs(t.weight) / d));
            auto &family = t.weight > 0 ? out.positive : out.negative;
            family.push_back({std::move(op), std::move(u)});
        }
    }
    return out;
}

inline QuantumOperation delete_edge(const WeightedGraph &g, Vertex u, Vertex v) {
    detail::require_real(g);
    detail::require_vertex(g, u);
    detail::require_vertex(g, v);
    if (!g.has_edge(u, v)) {
        throw Error(ErrorKind::NoSuchEdge, "no edge {" + std::to_string(u + 1) + "," + std::to_string(v + 1) + "}");
    }
    const double a = g.weight(u, v).real();
    WeightedGraph result = detail::without_edge(g, u, v);
    // A positive edge in a signed graph carries the state's positivity; the
    // remaining negative edges are compensated with loops instead.
    if (a > 0 && detail::has_negative_edge(g)) {
        result = detail::reloop_negative_edges(result);
    }
    auto basis = edge_measurement_basis(g.n(), u, v);
    KrausSet k = preparation_kraus(result, basis);
    return {std::move(k), std::move(result), std::move(basis)};
}

/// A negative edge also adds loops of 2|w| on both endpoints.
inline QuantumOperation add_edge(const WeightedGraph &g, Vertex u, Vertex v, double w) {
    detail::require_real(g);
    detail::require_vertex(g, u);
    detail::require_vertex(g, v);
    if (u == v) {
        throw Error(ErrorKind::InvalidGraph, "edge endpoints coincide; use a loop");
    }
    if (g.has_edge(u, v)) {
        throw Error(ErrorKind::EdgeExists, "edge {" + std::to_string(u + 1) + "," + std::to_string(v + 1) + "} exists");
    }
    if (w == 0.0 || !std::isfinite(w)) {
        throw Error(ErrorKind::BadWeights, "edge weight must be finite and nonzero", w);
    }
    GraphBuilder b(g.convention(), g.n());
    b.add_graph(g).add_edge(u, v, w);
    if (w < 0) {
        b.add_loop(u, 2.0 * std::abs(w)).add_loop(v, 2.0 * std::abs(w));
    }
    WeightedGraph result = b.build();
    auto basis = edge_measurement_basis(g.n(), u, v);
    KrausSet k = preparation_kraus(result, basis);
    return {std::move(k), std::move(result), std::move(basis)};
}

inline QuantumOperation delete_loop(const WeightedGraph &g, Vertex v) {
    detail::require_real(g);
    detail::require_vertex(g, v);
    if (!g.has_loop(v)) {
        throw Error(ErrorKind::NoSuchLoop, "no loop on vertex " + std::to_string(v + 1));
    }
    auto loops = g.loop_list();
    std::erase_if(loops, [&](const Loop &l) { return l.v == v; });
    WeightedGraph result(g.convention(), g.n(), g.edge_list(), loops);
    auto basis = standard_basis(g.n());
    KrausSet k = preparation_kraus(result, basis);
    return {std::move(k), std::move(result), std::move(basis)};
}

inline QuantumOperation add_loop(const WeightedGraph &g, Vertex v, double w) {
    detail::require_real(g);
    detail::require_vertex(g, v);
    if (g.has_loop(v)) {
        throw Error(ErrorKind::LoopExists, "vertex " + std::to_string(v + 1) + " already has a loop");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
        throw Error(ErrorKind::BadWeights, "an added loop needs a positive weight", w);
    }
    auto loops = g.loop_list();
    loops.push_back({v, w});
    WeightedGraph result(g.convention(), g.n(), g.edge_list(), loops);
    auto basis = standard_basis(g.n());
    KrausSet k = preparation_kraus(result, basis);
    return {std::move(k), std::move(result), std::move(basis)};
}

struct VertexDeletion {
    std::vector<QuantumOperation> steps;  // edge and loop removals, in order
    KrausSet removal;                     // n -> n-1 after the vertex is bare
    WeightedGraph result;
};

/// Strips the vertex (negative edges first, then positive ones, then its
/// loop) and drops its row and column.
inline VertexDeletion vertex_deletion(const WeightedGraph &g, Vertex v) {
    detail::require_real(g);
    detail::require_vertex(g, v);
    if (g.n() == 1) {
        throw Error(ErrorKind::InvalidGraph, "cannot delete the only vertex");
    }
    VertexDeletion out{{}, {}, g};
    WeightedGraph current = g;
    for (int sign : {-1, 1}) {
        for (Vertex u : neighbors(g, v)) {
            if (current.has_edge(u, v) && current.weight(u, v).real() * sign > 0) {
                out.steps.push_back(delete_edge(current, u, v));
                current = out.steps.back().result;
            }
        }
    }
    if (current.has_loop(v)) {
        out.steps.push_back(delete_loop(current, v));
        current = out.steps.back().result;
    }

    const std::size_t n = g.n();
    auto shrink = [&](Vertex x) { return x < v ? x : x - 1; };
    GraphBuilder b(g.convention(), n - 1);
    for (const auto &[k, w] : current.edges()) {
        b.add_edge(shrink(k.first), shrink(k.second), w);
    }
    for (const auto &[x, w] : current.loops()) {
        b.add_loop(shrink(x), w);
    }
    out.result = b.build();

    Matrix keep(n - 1, n);
    for (Vertex x = 0; x < n; ++x) {
        if (x != v) {
            keep(shrink(x), x) = 1.0;
        }
    }
    Matrix discard(n - 1, n);
    discard(0, v) = 1.0;
    out.removal = KrausSet{n, n - 1, {{keep, std::nullopt}, {discard, std::nullopt}}, {}};
    return out;
}

inline WeightedGraph delete_vertex(const WeightedGraph &g, Vertex v) {
    return vertex_deletion(g, v).result;
}

/// Appends an isolated vertex.
inline WeightedGraph add_vertex(const WeightedGraph &g) {
    return WeightedGraph(g.convention(), g.n() + 1, g.edge_list(), g.loop_list());
}

/// The isometry embedding n dimensions into n + 1.
inline KrausSet add_vertex_kraus(std::size_t n) {
    Matrix embed(n + 1, n);
    for (std::size_t i = 0; i < n; ++i) {
        embed(i, i) = 1.0;
    }
    return KrausSet{n, n + 1, {{embed, std::nullopt}}, {}};
}

}  // namespace graphstate
