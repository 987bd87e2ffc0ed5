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
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphstate/error.hpp"
#include "graphstate/matrix.hpp"

namespace graphstate {

/// How edge weights enter the degree and the Laplacian.
///
/// RealSigned: real weights, d_v is the signed sum of incident weights plus
/// the loop, Q = D - M + D0.
/// ComplexHermitian: hermitian weights, d_v is the sum of moduli plus the
/// loop, Q = D + M - D0.
enum class Convention { RealSigned, ComplexHermitian };

constexpr std::string_view to_string(Convention c) {
    return c == Convention::RealSigned ? "real" : "complex";
}

using Vertex = std::size_t;
using VertexPair = std::pair<Vertex, Vertex>;

struct Edge {
    Vertex u;
    Vertex v;
    Complex w;  // weight of (u, v); the reverse direction carries conj(w)
};

struct Loop {
    Vertex v;
    double w;
};

/// Simple undirected weighted graph with optional self-loops. Immutable once
/// built; every stored weight is finite and nonzero, edges are keyed u < v.
class WeightedGraph {
   public:
    WeightedGraph(Convention convention, std::size_t n, const std::vector<Edge> &edges = {},
                  const std::vector<Loop> &loops = {})
        : convention_(convention), n_(n) {
        if (n == 0) {
            throw Error(ErrorKind::InvalidGraph, "graph needs at least one vertex");
        }
        for (const Edge &e : edges) {
            check_vertex(e.u);
            check_vertex(e.v);
            if (e.u == e.v) {
                throw Error(ErrorKind::InvalidGraph, "edge endpoints coincide; use a loop");
            }
            check_weight(e.w);
            VertexPair key = e.u < e.v ? VertexPair{e.u, e.v} : VertexPair{e.v, e.u};
            Complex w = e.u < e.v ? e.w : std::conj(e.w);
            if (!edges_.emplace(key, w).second) {
                throw Error(ErrorKind::InvalidGraph, "duplicate edge " + pair_name(key));
            }
        }
        for (const Loop &l : loops) {
            check_vertex(l.v);
            check_weight(Complex(l.w, 0.0));
            if (!loops_.emplace(l.v, l.w).second) {
                throw Error(ErrorKind::InvalidGraph, "duplicate loop on vertex " + std::to_string(l.v + 1));
            }
        }
    }

    Convention convention() const noexcept {
        return convention_;
    }
    std::size_t n() const noexcept {
        return n_;
    }
    const std::map<VertexPair, Complex> &edges() const noexcept {
        return edges_;
    }
    const std::map<Vertex, double> &loops() const noexcept {
        return loops_;
    }

    bool has_edge(Vertex u, Vertex v) const {
        return u != v && edges_.count(key(u, v)) > 0;
    }
    bool has_loop(Vertex v) const {
        return loops_.count(v) > 0;
    }
    double loop(Vertex v) const {
        auto it = loops_.find(v);
        return it == loops_.end() ? 0.0 : it->second;
    }
    bool is_loop_free() const noexcept {
        return loops_.empty();
    }

    /// Adjacency entry M(u, v): the loop weight on the diagonal, conj for the
    /// reversed direction, zero when absent.
    Complex weight(Vertex u, Vertex v) const {
        if (u == v) {
            return loop(u);
        }
        auto it = edges_.find(key(u, v));
        if (it == edges_.end()) {
            return 0.0;
        }
        return u < v ? it->second : std::conj(it->second);
    }

    std::vector<Edge> edge_list() const {
        std::vector<Edge> out;
        out.reserve(edges_.size());
        for (const auto &[k, w] : edges_) {
            out.push_back({k.first, k.second, w});
        }
        return out;
    }
    std::vector<Loop> loop_list() const {
        std::vector<Loop> out;
        out.reserve(loops_.size());
        for (const auto &[v, w] : loops_) {
            out.push_back({v, w});
        }
        return out;
    }

    bool operator==(const WeightedGraph &) const = default;

   private:
    static VertexPair key(Vertex u, Vertex v) {
        return u < v ? VertexPair{u, v} : VertexPair{v, u};
    }
    static std::string pair_name(VertexPair p) {
        return "{" + std::to_string(p.first + 1) + "," + std::to_string(p.second + 1) + "}";
    }
    void check_vertex(Vertex v) const {
        if (v >= n_) {
            throw Error(ErrorKind::InvalidGraph, "vertex " + std::to_string(v + 1) + " out of range");
        }
    }
    void check_weight(Complex w) const {
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
            throw Error(ErrorKind::InvalidGraph, "weight is not finite");
        }
        if (w == Complex{}) {
            throw Error(ErrorKind::InvalidGraph, "weight is zero");
        }
        if (convention_ == Convention::RealSigned && w.imag() != 0.0) {
            throw Error(ErrorKind::ComplexNotSupported, "real convention requires real weights");
        }
    }

    Convention convention_;
    std::size_t n_;
    std::map<VertexPair, Complex> edges_;
    std::map<Vertex, double> loops_;
};

/// Accumulates weights (adding on repeats) and drops entries that end up
/// with magnitude at or below `zero_tolerance` when built.
class GraphBuilder {
   public:
    GraphBuilder(Convention convention, std::size_t n) : convention_(convention), n_(n) {
    }

    GraphBuilder &add_edge(Vertex u, Vertex v, Complex w) {
        if (u == v) {
            return add_loop(u, w.real());
        }
        if (u < v) {
            edges_[{u, v}] += w;
        } else {
            edges_[{v, u}] += std::conj(w);
        }
        return *this;
    }
    GraphBuilder &add_loop(Vertex v, double w) {
        loops_[v] += w;
        return *this;
    }
    GraphBuilder &add_graph(const WeightedGraph &g, double scale = 1.0) {
        for (const auto &[k, w] : g.edges()) {
            add_edge(k.first, k.second, scale * w);
        }
        for (const auto &[v, w] : g.loops()) {
            add_loop(v, scale * w);
        }
        return *this;
    }

    WeightedGraph build(double zero_tolerance = 0.0) const {
        std::vector<Edge> edges;
        std::vector<Loop> loops;
        for (const auto &[k, w] : edges_) {
            if (std::abs(w) > zero_tolerance) {
                edges.push_back({k.first, k.second, w});
            }
        }
        for (const auto &[v, w] : loops_) {
            if (std::abs(w) > zero_tolerance) {
                loops.push_back({v, w});
            }
        }
        return WeightedGraph(convention_, n_, edges, loops);
    }

   private:
    Convention convention_;
    std::size_t n_;
    std::map<VertexPair, Complex> edges_;
    std::map<Vertex, double> loops_;
};

inline std::vector<double> degrees(const WeightedGraph &g) {
    std::vector<double> d(g.n(), 0.0);
    const bool real = g.convention() == Convention::RealSigned;
    for (const auto &[k, w] : g.edges()) {
        const double c = real ? w.real() : std::abs(w);
        d[k.first] += c;
        d[k.second] += c;
    }
    for (const auto &[v, w] : g.loops()) {
        d[v] += w;
    }
    return d;
}

inline double degree(const WeightedGraph &g, Vertex v) {
    if (v >= g.n()) {
        throw Error(ErrorKind::InvalidGraph, "vertex out of range");
    }
    return degrees(g)[v];
}

/// Trace of the degree matrix.
inline double degree_sum(const WeightedGraph &g) {
    const auto d = degrees(g);
    return std::accumulate(d.begin(), d.end(), 0.0);
}

inline std::vector<Vertex> neighbors(const WeightedGraph &g, Vertex v) {
    std::vector<Vertex> out;
    for (const auto &[k, w] : g.edges()) {
        if (k.first == v) {
            out.push_back(k.second);
        } else if (k.second == v) {
            out.push_back(k.first);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct GraphMatrices {
    HermitianMatrix adjacency;  // M
    HermitianMatrix degree;     // D
    HermitianMatrix loops;      // D0
    HermitianMatrix laplacian;  // Q
};

inline Matrix adjacency_matrix(const WeightedGraph &g) {
    Matrix m(g.n(), g.n());
    for (const auto &[k, w] : g.edges()) {
        m(k.first, k.second) = w;
        m(k.second, k.first) = std::conj(w);
    }
    for (const auto &[v, w] : g.loops()) {
        m(v, v) = w;
    }
    return m;
}

inline GraphMatrices matrices(const WeightedGraph &g) {
    const std::size_t n = g.n();
    const auto d = degrees(g);
    Matrix m = adjacency_matrix(g);
    Matrix dm = Matrix::diagonal(d);
    Matrix d0(n, n);
    for (const auto &[v, w] : g.loops()) {
        d0(v, v) = w;
    }
    Matrix q = g.convention() == Convention::RealSigned ? dm - m + d0 : dm + m - d0;
    // The diagonal of Q is exactly the degree vector.
    for (std::size_t v = 0; v < n; ++v) {
        q(v, v) = d[v];
    }
    return {HermitianMatrix(std::move(m)), HermitianMatrix(std::move(dm)), HermitianMatrix(std::move(d0)),
            HermitianMatrix(std::move(q))};
}

inline HermitianMatrix laplacian(const WeightedGraph &g) {
    return matrices(g).laplacian;
}

/// Graph whose adjacency matrix is `m` (off-diagonal entries become edges,
/// diagonal entries loops). Entries with magnitude at or below
/// `zero_tolerance` are dropped.
inline WeightedGraph from_adjacency(Convention convention, const Matrix &m, double zero_tolerance = 0.0) {
    if (!m.is_square()) {
        throw Error(ErrorKind::DimensionMismatch, "adjacency matrix must be square");
    }
    GraphBuilder b(convention, m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        b.add_loop(i, m(i, i).real());
        for (std::size_t j = i + 1; j < m.rows(); ++j) {
            b.add_edge(i, j, m(i, j));
        }
    }
    return b.build(zero_tolerance);
}

inline WeightedGraph scaled(const WeightedGraph &g, double factor) {
    return GraphBuilder(g.convention(), g.n()).add_graph(g, factor).build();
}

inline void require_compatible(const WeightedGraph &a, const WeightedGraph &b) {
    if (a.convention() != b.convention()) {
        throw Error(ErrorKind::ConventionMismatch, "graphs use different weight conventions");
    }
    if (a.n() != b.n()) {
        throw Error(ErrorKind::DimensionMismatch, "graphs have different vertex counts");
    }
}

struct UnionResult {
    WeightedGraph graph;
    // Complex convention only: an overlapping pair of edges had different
    // phases, so |a + b| < |a| + |b| and the Laplacians no longer add.
    bool phase_warning = false;
};

inline UnionResult edge_union_checked(const WeightedGraph &a, const WeightedGraph &b) {
    require_compatible(a, b);
    bool warn = false;
    if (a.convention() == Convention::ComplexHermitian) {
        for (const auto &[k, w] : a.edges()) {
            auto it = b.edges().find(k);
            if (it == b.edges().end()) {
                continue;
            }
            const double lhs = std::abs(w + it->second);
            const double rhs = std::abs(w) + std::abs(it->second);
            if (lhs < rhs - 1e-12 * std::max(1.0, rhs)) {
                warn = true;
            }
        }
    }
    GraphBuilder builder(a.convention(), a.n());
    builder.add_graph(a).add_graph(b);
    return {builder.build(), warn};
}

/// Edge union: weights on shared edges and loops add; exact zeros vanish.
inline WeightedGraph edge_union(const WeightedGraph &a, const WeightedGraph &b) {
    return edge_union_checked(a, b).graph;
}

/// Union of graphs whose edge and loop sets do not overlap.
inline WeightedGraph disjoint_union(const WeightedGraph &a, const WeightedGraph &b) {
    require_compatible(a, b);
    for (const auto &[k, w] : a.edges()) {
        if (b.edges().count(k)) {
            throw Error(ErrorKind::NotDisjoint, "both graphs contain edge {" + std::to_string(k.first + 1) + "," +
                                                    std::to_string(k.second + 1) + "}");
        }
    }
    for (const auto &[v, w] : a.loops()) {
        if (b.loops().count(v)) {
            throw Error(ErrorKind::NotDisjoint, "both graphs contain a loop on vertex " + std::to_string(v + 1));
        }
    }
    return edge_union(a, b);
}

/// Relabels vertex v as perm[v]. Q(result) = P^T Q(g) P with P(v, perm[v]) = 1.
inline WeightedGraph permute(const WeightedGraph &g, std::span<const Vertex> perm) {
    if (perm.size() != g.n()) {
        throw Error(ErrorKind::InvalidPermutation, "permutation length differs from vertex count");
    }
    std::vector<bool> seen(g.n(), false);
    for (Vertex p : perm) {
        if (p >= g.n() || seen[p]) {
            throw Error(ErrorKind::InvalidPermutation, "not a permutation of the vertex set");
        }
        seen[p] = true;
    }
    GraphBuilder b(g.convention(), g.n());
    for (const auto &[k, w] : g.edges()) {
        b.add_edge(perm[k.first], perm[k.second], w);
    }
    for (const auto &[v, w] : g.loops()) {
        b.add_loop(perm[v], w);
    }
    return b.build();
}

}  // namespace graphstate
