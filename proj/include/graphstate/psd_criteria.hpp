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

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graphstate/error.hpp"
#include "graphstate/graph.hpp"
#include "graphstate/products.hpp"
#include "graphstate/spectra.hpp"

namespace graphstate {

enum class PsdVerdict { PSD, NotPSD, Unknown };

constexpr std::string_view to_string(PsdVerdict v) {
    switch (v) {
        case PsdVerdict::PSD: return "PSD";
        case PsdVerdict::NotPSD: return "NotPSD";
        case PsdVerdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

/// Which combinatorial rule decided the verdict.
enum class PsdRule {
    ZeroDegreeRow,          // nonisolated vertex of degree zero, or a negative degree
    NegativeLoops,          // real weights, every loop negative
    LoopFreeComplex,        // complex convention without loops
    NonnegativeLoops,       // complex convention, every loop nonnegative
    SignedTree,             // loop-free real tree
    SignedCycle,            // loop-free real cycle, four or more vertices
    TrianglePairs,          // every negative edge sits in two heavier triangles
    MatchingCore,           // negative edges form a matching inside a K4 core
    PrincipalSubgraph,      // a vertex-deleted subgraph already fails
    None,
};

constexpr std::string_view to_string(PsdRule r) {
    switch (r) {
        case PsdRule::ZeroDegreeRow: return "zero-degree-row";
        case PsdRule::NegativeLoops: return "negative-loops";
        case PsdRule::LoopFreeComplex: return "loop-free-complex";
        case PsdRule::NonnegativeLoops: return "nonnegative-loops";
        case PsdRule::SignedTree: return "signed-tree";
        case PsdRule::SignedCycle: return "signed-cycle";
        case PsdRule::TrianglePairs: return "triangle-pairs";
        case PsdRule::MatchingCore: return "matching-core";
        case PsdRule::PrincipalSubgraph: return "principal-subgraph";
        case PsdRule::None: return "none";
    }
    return "none";
}

struct PsdReport {
    PsdVerdict verdict = PsdVerdict::Unknown;
    PsdRule rule = PsdRule::None;
    std::string detail;
};

struct PrincipalComponent {
    WeightedGraph graph;
    std::vector<Vertex> vertices;  // original index of each local vertex
};

/// Deletes v and folds each edge (u, v) into a loop on u so every remaining
/// diagonal entry of Q is unchanged. The components of what is left are
/// principal submatrices of Q(g).
inline std::vector<PrincipalComponent> theta(const WeightedGraph &g, Vertex v) {
    if (v >= g.n()) {
        throw Error(ErrorKind::InvalidGraph, "vertex out of range");
    }
    const bool real = g.convention() == Convention::RealSigned;
    std::vector<double> loop(g.n(), 0.0);
    for (const auto &[x, w] : g.loops()) {
        loop[x] = w;
    }
    for (Vertex u : neighbors(g, v)) {
        const Complex a = g.weight(u, v);
        loop[u] += real ? a.real() : std::abs(a);
    }

    // components of g - v by edges
    std::vector<int> comp(g.n(), -1);
    int count = 0;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (s == v || comp[s] >= 0) {
            continue;
        }
        std::vector<Vertex> stack{s};
        comp[s] = count;
        while (!stack.empty()) {
            const Vertex x = stack.back();
            stack.pop_back();
            for (Vertex y : neighbors(g, x)) {
                if (y != v && comp[y] < 0) {
                    comp[y] = count;
                    stack.push_back(y);
                }
            }
        }
        ++count;
    }

    std::vector<PrincipalComponent> out;
    for (int c = 0; c < count; ++c) {
        std::vector<Vertex> members;
        std::vector<Vertex> local(g.n(), 0);
        for (Vertex x = 0; x < g.n(); ++x) {
            if (comp[x] == c) {
                local[x] = members.size();
                members.push_back(x);
            }
        }
        GraphBuilder b(g.convention(), members.size());
        for (const auto &[k, w] : g.edges()) {
            if (k.first != v && k.second != v && comp[k.first] == c) {
                b.add_edge(local[k.first], local[k.second], w);
            }
        }
        for (Vertex x : members) {
            b.add_loop(local[x], loop[x]);
        }
        out.push_back({b.build(), std::move(members)});
    }
    return out;
}

/// Complete graphs on 2^k vertices with +-1 weights, unit degrees and a pure
/// state, built by repeated modified tensor products with K2.
inline WeightedGraph signed_complete_pure(int k) {
    if (k < 1) {
        throw Error(ErrorKind::InvalidGraph, "exponent must be at least one");
    }
    const WeightedGraph k2(Convention::RealSigned, 2, {{0, 1, 1.0}});
    WeightedGraph g = k2;
    for (int i = 1; i < k; ++i) {
        g = modified_tensor(k2, g);
    }
    return g;
}

namespace detail {

// x^T Q x for real x in the real convention.
inline double quadratic_form(const WeightedGraph &g, const std::vector<double> &x) {
    double s = 0;
    for (const auto &[k, w] : g.edges()) {
        const double diff = x[k.first] - x[k.second];
        s += w.real() * diff * diff;
    }
    for (const auto &[v, w] : g.loops()) {
        s += w * x[v] * x[v];
    }
    return s;
}

inline double rayleigh(const WeightedGraph &g, const std::vector<double> &x) {
    double nn = 0;
    for (double t : x) {
        nn += t * t;
    }
    return quadratic_form(g, x) / nn;
}

inline bool all_real_weights_loop_free(const WeightedGraph &g) {
    return g.convention() == Convention::RealSigned && g.is_loop_free();
}

inline bool connected(const WeightedGraph &g) {
    std::vector<bool> seen(g.n(), false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const Vertex x = stack.back();
        stack.pop_back();
        for (Vertex y : neighbors(g, x)) {
            if (!seen[y]) {
                seen[y] = true;
                ++reached;
                stack.push_back(y);
            }
        }
    }
    return reached == g.n();
}

// Vertices reachable from `start` without crossing edge {a, b}.
inline std::vector<Vertex> side_of(const WeightedGraph &g, Vertex start, Vertex a, Vertex b) {
    std::vector<bool> seen(g.n(), false);
    std::vector<Vertex> stack{start}, out{start};
    seen[start] = true;
    while (!stack.empty()) {
        const Vertex x = stack.back();
        stack.pop_back();
        for (Vertex y : neighbors(g, x)) {
            const bool cut = (x == a && y == b) || (x == b && y == a);
            if (!cut && !seen[y]) {
                seen[y] = true;
                out.push_back(y);
                stack.push_back(y);
            }
        }
    }
    return out;
}

inline PsdReport zero_degree_row(const WeightedGraph &g, const std::vector<double> &d, double tol) {
    for (Vertex v = 0; v < g.n(); ++v) {
        if (d[v] < -tol) {
            return {PsdVerdict::NotPSD, PsdRule::ZeroDegreeRow, "vertex " + std::to_string(v + 1) + " has negative degree"};
        }
        double scale = std::abs(g.loop(v));
        for (Vertex u : neighbors(g, v)) {
            scale += std::abs(g.weight(u, v));
        }
        if (scale == 0.0 || std::abs(d[v]) > 1e-12 * scale) {
            continue;
        }
        // A zero diagonal entry beside a nonzero off-diagonal one; the 2x2
        // principal block certifies how negative the spectrum goes.
        for (Vertex u : neighbors(g, v)) {
            const double x = std::abs(g.weight(u, v));
            const double lo = 0.5 * ((d[v] + d[u]) - std::sqrt((d[v] - d[u]) * (d[v] - d[u]) + 4 * x * x));
            if (lo < -tol) {
                return {PsdVerdict::NotPSD, PsdRule::ZeroDegreeRow,
                        "vertex " + std::to_string(v + 1) + " has an edge but zero degree"};
            }
        }
    }
    return {};
}

inline PsdReport negative_loops(const WeightedGraph &g, double tol) {
    if (g.convention() != Convention::RealSigned || g.loops().empty()) {
        return {};
    }
    double sum = 0;
    for (const auto &[v, w] : g.loops()) {
        if (w >= 0) {
            return {};
        }
        sum += w;
    }
    // 1^T Q 1 is the loop sum in the real convention
    if (sum / static_cast<double>(g.n()) < -tol) {
        return {PsdVerdict::NotPSD, PsdRule::NegativeLoops, "every loop is negative"};
    }
    return {};
}

inline PsdReport tree_or_cycle(const WeightedGraph &g, double tol) {
    if (!all_real_weights_loop_free(g) || g.n() < 2 || !connected(g)) {
        return {};
    }
    const std::size_t n = g.n(), m = g.edges().size();
    std::vector<Edge> negative;
    for (const auto &[k, w] : g.edges()) {
        if (w.real() < 0) {
            negative.push_back({k.first, k.second, w});
        }
    }

    if (m == n - 1) {
        if (negative.empty()) {
            return {PsdVerdict::PSD, PsdRule::SignedTree, "tree with positive weights"};
        }
        const Edge &e = negative.front();
        auto side = side_of(g, e.u, e.u, e.v);
        if (side.size() * 2 > n) {
            side = side_of(g, e.v, e.u, e.v);
        }
        const double bound = e.w.real() / static_cast<double>(side.size());
        if (bound < -tol) {
            return {PsdVerdict::NotPSD, PsdRule::SignedTree, "tree with a negative edge"};
        }
        return {};
    }

    if (m != n || n < 4) {
        return {};
    }
    for (Vertex v = 0; v < n; ++v) {
        if (neighbors(g, v).size() != 2) {
            return {};
        }
    }
    // walk the cycle
    std::vector<Vertex> order{0};
    std::vector<double> weight;
    Vertex prev = n, cur = 0;
    for (std::size_t step = 0; step < n; ++step) {
        const auto nb = neighbors(g, cur);
        const Vertex next = nb[0] != prev ? nb[0] : nb[1];
        weight.push_back(g.weight(cur, next).real());
        prev = cur;
        cur = next;
        if (step + 1 < n) {
            order.push_back(cur);
        }
    }
    // edge i joins order[i] and order[(i + 1) % n]
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < n; ++i) {
        if (weight[i] < 0) {
            neg.push_back(i);
        }
    }
    if (neg.empty()) {
        return {PsdVerdict::PSD, PsdRule::SignedCycle, "cycle with positive weights"};
    }
    std::vector<double> x(n, 0.0);
    if (neg.size() >= 2) {
        // indicator of the arc between two negative edges; only they cross it
        for (std::size_t i = neg[0] + 1; i <= neg[1]; ++i) {
            x[order[i]] = 1.0;
        }
        if (rayleigh(g, x) < -tol) {
            return {PsdVerdict::NotPSD, PsdRule::SignedCycle, "cycle with two or more negative edges"};
        }
        return {};
    }
    // One negative edge: PSD exactly when the sum of reciprocal weights is
    // nonpositive, i.e. the positive path conducts at least as well.
    double recip = 0, recip_pos = 0;
    for (double w : weight) {
        recip += 1.0 / w;
        if (w > 0) {
            recip_pos += 1.0 / w;
        }
    }
    if (recip <= 0) {
        return {PsdVerdict::PSD, PsdRule::SignedCycle, "negative edge outweighed by the rest of the cycle"};
    }
    // potentials dropping by 1 along the positive path
    const std::size_t p = neg[0];
    double level = 0;
    for (std::size_t s = 1; s <= n; ++s) {
        const std::size_t idx = (p + s) % n;
        x[order[idx]] = level;
        level -= 1.0 / (weight[idx] * recip_pos);
    }
    double mean = 0;
    for (double t : x) {
        mean += t / static_cast<double>(n);
    }
    for (double &t : x) {
        t -= mean;
    }
    if (rayleigh(g, x) < -tol) {
        return {PsdVerdict::NotPSD, PsdRule::SignedCycle, "negative edge heavier than the rest of the cycle"};
    }
    return {};
}

inline bool positive_loops(const WeightedGraph &g) {
    return std::all_of(g.loops().begin(), g.loops().end(), [](const auto &l) { return l.second > 0; });
}

// Two common neighbours w with a(u, w), a(v, w) > limit, lowest first.
inline std::optional<std::pair<Vertex, Vertex>> apex_pair(const WeightedGraph &g, Vertex u, Vertex v, double limit,
                                                         const std::set<Vertex> &exclude = {}) {
    std::vector<Vertex> found;
    for (Vertex w : neighbors(g, u)) {
        if (w == v || exclude.count(w) || !g.has_edge(v, w)) {
            continue;
        }
        if (g.weight(u, w).real() > limit && g.weight(v, w).real() > limit) {
            found.push_back(w);
            if (found.size() == 2) {
                return std::pair{found[0], found[1]};
            }
        }
    }
    return std::nullopt;
}

inline bool claim_edge(std::set<VertexPair> &used, Vertex a, Vertex b) {
    return used.insert({std::min(a, b), std::max(a, b)}).second;
}

inline PsdReport triangle_pairs(const WeightedGraph &g) {
    if (g.convention() != Convention::RealSigned || !positive_loops(g)) {
        return {};
    }
    std::set<VertexPair> used;
    std::size_t groups = 0;
    for (const auto &[k, w] : g.edges()) {
        if (w.real() >= 0) {
            continue;
        }
        const auto apex = apex_pair(g, k.first, k.second, std::abs(w.real()));
        if (!apex) {
            return {};
        }
        const auto [x, y] = *apex;
        bool fresh = claim_edge(used, k.first, k.second);
        for (Vertex t : {x, y}) {
            fresh = claim_edge(used, k.first, t) && fresh;
            fresh = claim_edge(used, k.second, t) && fresh;
        }
        if (!fresh) {
            return {};
        }
        ++groups;
    }
    if (groups == 0) {
        return {PsdVerdict::PSD, PsdRule::TrianglePairs, "no negative edges and positive loops"};
    }
    return {PsdVerdict::PSD, PsdRule::TrianglePairs, "each negative edge lies in two heavier triangles"};
}

inline PsdReport matching_core(const WeightedGraph &g) {
    if (g.convention() != Convention::RealSigned || !positive_loops(g)) {
        return {};
    }
    std::vector<VertexPair> negative;
    for (const auto &[k, w] : g.edges()) {
        if (w.real() < 0) {
            negative.push_back(k);
        }
    }
    if (negative.empty()) {
        return {};
    }
    std::vector<bool> assigned(negative.size(), false);
    std::set<VertexPair> used;
    auto positive_edge = [&](Vertex a, Vertex b) { return g.has_edge(a, b) && g.weight(a, b).real() > 0; };

    for (std::size_t i = 0; i < negative.size(); ++i) {
        if (assigned[i]) {
            continue;
        }
        const auto [w, z] = negative[i];
        std::optional<std::size_t> partner;
        for (std::size_t j = i + 1; j < negative.size() && !partner; ++j) {
            const auto [x, y] = negative[j];
            if (assigned[j] || x == w || x == z || y == w || y == z) {
                continue;
            }
            if (positive_edge(w, x) && positive_edge(w, y) && positive_edge(z, x) && positive_edge(z, y)) {
                partner = j;
            }
        }
        if (!partner) {
            return {};
        }
        assigned[i] = assigned[*partner] = true;
        const auto [x, y] = negative[*partner];
        const std::set<Vertex> core{w, z, x, y};
        const double a = std::min({g.weight(w, x).real(), g.weight(w, y).real(), g.weight(z, x).real(),
                                   g.weight(z, y).real()});
        bool fresh = true;
        for (const VertexPair &e : {VertexPair{w, z}, VertexPair{x, y}}) {
            const double b = std::abs(g.weight(e.first, e.second).real());
            if (!(b > a)) {
                return {};
            }
            // a copy of the |-->|--> graph at weight a absorbs the core, leaving
            // negative weight a - b for the triangle pair to cover
            const auto apex = apex_pair(g, e.first, e.second, b - a, core);
            if (!apex) {
                return {};
            }
            for (Vertex t : {apex->first, apex->second}) {
                fresh = claim_edge(used, e.first, t) && fresh;
                fresh = claim_edge(used, e.second, t) && fresh;
            }
        }
        for (Vertex s : core) {
            for (Vertex t : core) {
                if (s < t) {
                    fresh = claim_edge(used, s, t) && fresh;
                }
            }
        }
        if (!fresh) {
            return {};
        }
    }
    return {PsdVerdict::PSD, PsdRule::MatchingCore, "negative edges pair into K4 cores with heavier triangles"};
}

inline PsdReport refuting_rules(const WeightedGraph &g, double tol) {
    const auto d = degrees(g);
    if (auto r = zero_degree_row(g, d, tol); r.verdict != PsdVerdict::Unknown) {
        return r;
    }
    return negative_loops(g, tol);
}

}  // namespace detail

/// Decides positive semidefiniteness of Q(g) from the graph alone when one
/// of the rules applies; every conclusive verdict is a proof, Unknown is not.
inline PsdReport graphical_psd_check(const WeightedGraph &g) {
    const double tol = psd_tolerance(laplacian(g));
    if (auto r = detail::refuting_rules(g, tol); r.verdict != PsdVerdict::Unknown) {
        return r;
    }
    if (g.convention() == Convention::ComplexHermitian) {
        if (g.is_loop_free()) {
            return {PsdVerdict::PSD, PsdRule::LoopFreeComplex, "complex weights without loops"};
        }
        if (std::all_of(g.loops().begin(), g.loops().end(), [](const auto &l) { return l.second >= 0; })) {
            return {PsdVerdict::PSD, PsdRule::NonnegativeLoops, "complex weights with nonnegative loops"};
        }
    }
    if (auto r = detail::tree_or_cycle(g, tol); r.verdict != PsdVerdict::Unknown) {
        return r;
    }
    if (auto r = detail::triangle_pairs(g); r.verdict != PsdVerdict::Unknown) {
        return r;
    }
    if (auto r = detail::matching_core(g); r.verdict != PsdVerdict::Unknown) {
        return r;
    }
    for (Vertex v = 0; v < g.n() && g.n() > 1; ++v) {
        for (const auto &part : theta(g, v)) {
            if (detail::refuting_rules(part.graph, tol).verdict == PsdVerdict::NotPSD) {
                return {PsdVerdict::NotPSD, PsdRule::PrincipalSubgraph,
                        "subgraph left after deleting vertex " + std::to_string(v + 1) + " is not PSD"};
            }
        }
    }
    return {};
}

}  // namespace graphstate
