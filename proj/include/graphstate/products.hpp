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
#include <span>
#include <vector>

#include "graphstate/error.hpp"
#include "graphstate/graph.hpp"
#include "graphstate/spectra.hpp"
#include "graphstate/state.hpp"

namespace graphstate {

// Graph operators.

/// Negates every weight.
inline WeightedGraph negate(const WeightedGraph &g) {
    return scaled(g, -1.0);
}

/// Drops the loops.
inline WeightedGraph without_loops(const WeightedGraph &g) {
    return WeightedGraph(g.convention(), g.n(), g.edge_list(), {});
}

/// Keeps only the loops.
inline WeightedGraph loops_only(const WeightedGraph &g) {
    return WeightedGraph(g.convention(), g.n(), {}, g.loop_list());
}

/// Loops-only graph whose loop on v is the degree of v.
inline WeightedGraph degree_loops(const WeightedGraph &g) {
    GraphBuilder b(g.convention(), g.n());
    const auto d = degrees(g);
    for (Vertex v = 0; v < g.n(); ++v) {
        b.add_loop(v, d[v]);
    }
    return b.build();
}

/// Degree loops of the loop-free part.
inline WeightedGraph edge_degree_loops(const WeightedGraph &g) {
    return degree_loops(without_loops(g));
}

namespace detail {

struct Arc {
    Vertex from;
    Vertex to;
    Complex w;
};

inline std::vector<Arc> arcs(const WeightedGraph &g) {
    std::vector<Arc> out;
    for (const auto &[k, w] : g.edges()) {
        out.push_back({k.first, k.second, w});
        out.push_back({k.second, k.first, std::conj(w)});
    }
    for (const auto &[v, w] : g.loops()) {
        out.push_back({v, v, w});
    }
    return out;
}

}  // namespace detail

/// Tensor product: M(g (x) h) = M(g) (x) M(h). Vertex (u, v) has index u * h.n() + v.
inline WeightedGraph tensor(const WeightedGraph &g, const WeightedGraph &h) {
    if (g.convention() != h.convention()) {
        throw Error(ErrorKind::ConventionMismatch, "graphs use different weight conventions");
    }
    const std::size_t m = h.n();
    GraphBuilder b(g.convention(), g.n() * m);
    const auto ga = detail::arcs(g);
    const auto ha = detail::arcs(h);
    for (const auto &x : ga) {
        for (const auto &y : ha) {
            const Vertex i = x.from * m + y.from;
            const Vertex j = x.to * m + y.to;
            if (i < j) {
                b.add_edge(i, j, x.w * y.w);
            } else if (i == j) {
                b.add_loop(i, (x.w * y.w).real());
            }
        }
    }
    return b.build();
}

/// Product whose Laplacian is the Kronecker product of the factor Laplacians.
///
/// real:    L(g)(x)-L(h) + L(g)(x)N(h) + N(g)(x)L(h) + O(g)(x)O(h)
/// complex: L(g)(x)L(h)  + L(g)(x)N(h) + N(g)(x)L(h) + [O(g)(x)O(h) u -2 NL(g)(x)NL(h)]
///
/// L strips loops, O keeps only loops, N turns degrees into loops. The first
/// four parts are edge-disjoint; the complex loop part is an edge union.
/// In the complex convention the identity needs nonnegative degrees, since the
/// degree of an edge-times-loop product takes the modulus of the loop.
inline WeightedGraph modified_tensor(const WeightedGraph &g, const WeightedGraph &h) {
    if (g.convention() != h.convention()) {
        throw Error(ErrorKind::ConventionMismatch, "graphs use different weight conventions");
    }
    const WeightedGraph lg = without_loops(g);
    const WeightedGraph lh = without_loops(h);
    const WeightedGraph mixed = disjoint_union(tensor(lg, degree_loops(h)), tensor(degree_loops(g), lh));
    if (g.convention() == Convention::RealSigned) {
        const WeightedGraph cross = tensor(lg, negate(lh));
        return disjoint_union(disjoint_union(cross, mixed), tensor(loops_only(g), loops_only(h)));
    }
    const WeightedGraph cross = tensor(lg, lh);
    const WeightedGraph correction = scaled(tensor(edge_degree_loops(g), negate(edge_degree_loops(h))), 2.0);
    const WeightedGraph diag = edge_union(tensor(loops_only(g), loops_only(h)), correction);
    return disjoint_union(disjoint_union(cross, mixed), diag);
}

/// L(g)(x)N(h) + N(g)(x)L(h)
inline WeightedGraph cartesian(const WeightedGraph &g, const WeightedGraph &h) {
    if (g.convention() != h.convention()) {
        throw Error(ErrorKind::ConventionMismatch, "graphs use different weight conventions");
    }
    return disjoint_union(tensor(without_loops(g), degree_loops(h)), tensor(degree_loops(g), without_loops(h)));
}

inline void check_probabilities(std::span<const double> p) {
    if (p.empty()) {
        throw Error(ErrorKind::BadWeights, "no weights given");
    }
    double sum = 0;
    for (double x : p) {
        if (!(x > 0.0)) {
            throw Error(ErrorKind::BadWeights, "weights must be positive", x);
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw Error(ErrorKind::BadWeights, "weights must sum to one", sum);
    }
}

/// Graph of sum p_i sigma(g_i). Each graph is first scaled to unit degree sum.
/// In the complex convention the edges add and the loops are rebuilt so every
/// degree is the weighted sum of the input degrees.
inline WeightedGraph mix(std::span<const double> p, std::span<const WeightedGraph> graphs) {
    if (p.size() != graphs.size()) {
        throw Error(ErrorKind::BadWeights, "one weight per graph is required");
    }
    check_probabilities(p);
    const WeightedGraph &first = graphs.front();
    for (const auto &g : graphs) {
        require_compatible(first, g);
    }
    std::vector<WeightedGraph> unit;
    for (const auto &g : graphs) {
        const double d = degree_sum(g);
        if (!(d > 0.0)) {
            throw Error(ErrorKind::ZeroDegreeSum, "mixture component has no positive degree sum", d);
        }
        unit.push_back(scaled(g, 1.0 / d));
    }

    double largest = 0;
    for (const auto &g : unit) {
        for (const auto &[k, w] : g.edges()) {
            largest = std::max(largest, std::abs(w));
        }
        for (const auto &[v, w] : g.loops()) {
            largest = std::max(largest, std::abs(w));
        }
    }
    const double zero = 1e-14 * largest;

    GraphBuilder sum(first.convention(), first.n());
    if (first.convention() == Convention::RealSigned) {
        for (std::size_t i = 0; i < unit.size(); ++i) {
            sum.add_graph(unit[i], p[i]);
        }
        return sum.build(zero);
    }

    GraphBuilder edges(first.convention(), first.n());
    for (std::size_t i = 0; i < unit.size(); ++i) {
        sum.add_graph(degree_loops(unit[i]), p[i]);
        edges.add_graph(without_loops(unit[i]), p[i]);
    }
    const WeightedGraph joined = edges.build(zero);
    sum.add_graph(joined);
    sum.add_graph(edge_degree_loops(joined), -1.0);
    return sum.build(zero);
}

inline WeightedGraph mix(std::initializer_list<double> p, std::initializer_list<WeightedGraph> graphs) {
    const std::vector<double> pv(p);
    const std::vector<WeightedGraph> gv(graphs);
    return mix(std::span<const double>(pv), std::span<const WeightedGraph>(gv));
}

struct WeightedGraphTerm {
    double weight;
    WeightedGraph graph;
};

/// One pure graph per nonzero eigenvalue of sigma(g), weighted by the eigenvalue.
inline std::vector<WeightedGraphTerm> pure_decomposition_graphs(const WeightedGraph &g) {
    const DensityMatrix sigma = density_from_graph(g);
    const auto sys = detail::jacobi(sigma.hermitian(), true);
    const std::size_t n = g.n();
    std::vector<WeightedGraphTerm> out;
    double total = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = sys.values[k];
        if (lambda <= 1e-12) {
            continue;
        }
        Vector psi(n);
        for (std::size_t r = 0; r < n; ++r) {
            psi[r] = sys.vectors(r, k);
            if (g.convention() == Convention::RealSigned) {
                psi[r] = psi[r].real();
            }
        }
        const double nrm = norm(psi);
        for (auto &z : psi) {
            z /= nrm;
        }
        out.push_back({lambda, graph_from_hermitian(make_hermitian(outer(psi, psi)), g.convention())});
        total += lambda;
    }
    for (auto &t : out) {
        t.weight /= total;
    }
    return out;
}

}  // namespace graphstate
