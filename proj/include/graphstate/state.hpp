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
#include <variant>
#include <vector>

#include "graphstate/error.hpp"
#include "graphstate/graph.hpp"
#include "graphstate/matrix.hpp"
#include "graphstate/spectra.hpp"

namespace graphstate {

/// Hermitian, positive semidefinite, unit trace.
class DensityMatrix {
   public:
    explicit DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {
        const double tr = m_.trace();
        if (std::abs(tr - 1.0) > 1e-12) {
            throw Error(ErrorKind::NotAState, "trace differs from one", tr);
        }
        const double lo = min_eigenvalue(m_);
        if (lo < -psd_tolerance(m_)) {
            throw Error(ErrorKind::NotAState, "matrix has a negative eigenvalue", lo);
        }
    }

    std::size_t n() const noexcept {
        return m_.n();
    }
    const HermitianMatrix &hermitian() const noexcept {
        return m_;
    }
    const Matrix &matrix() const noexcept {
        return m_.matrix();
    }
    const Complex &operator()(std::size_t i, std::size_t j) const {
        return m_(i, j);
    }

   private:
    HermitianMatrix m_;
};

namespace detail {

inline double snap_tolerance(const Matrix &m) {
    return 1e-14 * m.max_abs();
}

inline double abs_weight_sum(const WeightedGraph &g) {
    double s = 0;
    for (const auto &[k, w] : g.edges()) {
        s += std::abs(w);
    }
    for (const auto &[v, w] : g.loops()) {
        s += std::abs(w);
    }
    return s;
}

}  // namespace detail

/// sigma(g) = Q / d.
inline DensityMatrix density_from_graph(const WeightedGraph &g) {
    const HermitianMatrix q = laplacian(g);
    const double lo = min_eigenvalue(q);
    if (lo < -psd_tolerance(q)) {
        throw Error(ErrorKind::NotPSD, "Laplacian has a negative eigenvalue", lo);
    }
    const double d = degree_sum(g);
    if (d <= 1e-12 * detail::abs_weight_sum(g)) {
        throw Error(ErrorKind::ZeroDegreeSum, "degree sum is zero", d);
    }
    return DensityMatrix(HermitianMatrix(q.matrix() * Complex(1.0 / d)));
}

/// Graph whose Laplacian is exactly `a`. Entries below 1e-14 of the largest
/// magnitude are treated as zero.
inline WeightedGraph graph_from_hermitian(const HermitianMatrix &a, Convention convention) {
    const std::size_t n = a.n();
    const double zero = detail::snap_tolerance(a.matrix());
    GraphBuilder b(convention, n);
    if (convention == Convention::RealSigned) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (std::abs(a(i, j).imag()) > zero) {
                    throw Error(ErrorKind::ComplexNotSupported, "real convention needs a real matrix");
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            double loop = a(i, i).real();
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i && std::abs(a(i, j)) > zero) {
                    loop += a(i, j).real();
                    if (j > i) {
                        b.add_edge(i, j, -a(i, j).real());
                    }
                }
            }
            b.add_loop(i, loop);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            double loop = a(i, i).real();
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i && std::abs(a(i, j)) > zero) {
                    loop -= std::abs(a(i, j));
                    if (j > i) {
                        b.add_edge(i, j, a(i, j));
                    }
                }
            }
            b.add_loop(i, loop);
        }
    }
    return b.build(zero);
}

inline WeightedGraph graph_from_density(const DensityMatrix &sigma, Convention convention) {
    return graph_from_hermitian(sigma.hermitian(), convention);
}

/// Any hermitian operator as a graph; no trace or positivity requirement.
inline WeightedGraph observable_graph(const HermitianMatrix &a, Convention convention = Convention::ComplexHermitian) {
    return graph_from_hermitian(a, convention);
}

/// Purity test on the graph itself: sum d_i^2 + 2 sum |a_ij|^2 = d^2.
inline bool is_pure(const WeightedGraph &g) {
    (void)density_from_graph(g);
    const auto d = degrees(g);
    double lhs = 0;
    double total = 0;
    for (double x : d) {
        lhs += x * x;
        total += x;
    }
    for (const auto &[k, w] : g.edges()) {
        lhs += 2.0 * std::norm(w);
    }
    return std::abs(lhs - total * total) <= 1e-10 * total * total;
}

/// (|i> - phase |j>) / sqrt(2)
struct EdgeProjector {
    Vertex i;
    Vertex j;
    Complex phase;  // unit modulus

    double angle() const {
        return std::arg(phase);
    }
};

/// |v>
struct LoopProjector {
    Vertex v;
};

struct ProjectorTerm {
    double coefficient;
    std::variant<EdgeProjector, LoopProjector> projector;

    Vector state(std::size_t n) const {
        Vector s(n);
        if (const auto *e = std::get_if<EdgeProjector>(&projector)) {
            s[e->i] = std::numbers::sqrt2 / 2.0;
            s[e->j] = -e->phase * (std::numbers::sqrt2 / 2.0);
        } else {
            s[std::get<LoopProjector>(projector).v] = 1.0;
        }
        return s;
    }

    Matrix matrix(std::size_t n) const {
        const Vector s = state(n);
        return outer(s, s) * Complex(coefficient);
    }
};

/// Edge terms carry 2|a| scale with the phase chosen so the terms add up to
/// scale * Q; whatever the edges leave on the diagonal is fixed by loop terms,
/// which may be negative.
inline std::vector<ProjectorTerm> projector_terms(const WeightedGraph &g, double scale) {
    std::vector<ProjectorTerm> terms;
    const bool real = g.convention() == Convention::RealSigned;
    std::vector<double> loop_coef(g.n(), 0.0);
    for (const auto &[v, w] : g.loops()) {
        loop_coef[v] = w;
    }
    for (const auto &[k, w] : g.edges()) {
        const double mag = std::abs(w);
        Complex phase;
        if (real) {
            // Q(i, j) = -a
            phase = w.real() > 0 ? 1.0 : -1.0;
            if (w.real() < 0) {
                loop_coef[k.first] -= 2.0 * mag;
                loop_coef[k.second] -= 2.0 * mag;
            }
        } else {
            // Q(i, j) = a
            phase = -std::conj(w) / mag;
        }
        terms.push_back({2.0 * mag * scale, EdgeProjector{k.first, k.second, phase}});
    }
    for (Vertex v = 0; v < g.n(); ++v) {
        if (loop_coef[v] != 0.0) {
            terms.push_back({loop_coef[v] * scale, LoopProjector{v}});
        }
    }
    return terms;
}

/// sigma(g) as a signed combination of rank-one projectors.
inline std::vector<ProjectorTerm> decompose(const WeightedGraph &g) {
    (void)density_from_graph(g);
    return projector_terms(g, 1.0 / degree_sum(g));
}

inline HermitianMatrix observable_from_graph(const WeightedGraph &g) {
    Matrix sum(g.n(), g.n());
    for (const auto &t : projector_terms(g, 1.0)) {
        sum += t.matrix(g.n());
    }
    return make_hermitian(std::move(sum));
}

/// -sum lambda log2 lambda over eigenvalues above 1e-12.
inline double von_neumann_entropy(const DensityMatrix &sigma) {
    double s = 0;
    for (double lambda : eigenvalues(sigma.hermitian())) {
        lambda = std::max(lambda, 0.0);
        if (lambda > 1e-12) {
            s -= lambda * std::log2(lambda);
        }
    }
    return s;
}

enum class Keep { First, Second };

struct BipartiteShape {
    std::size_t p;
    std::size_t q;
};

inline void require_shape(std::size_t n, BipartiteShape shape) {
    if (shape.p == 0 || shape.q == 0 || shape.p * shape.q != n) {
        throw Error(ErrorKind::DimensionMismatch, "bipartite shape does not match the dimension");
    }
}

/// Traces out the factor not kept. Index (i, k) of p x q is flattened as i*q + k.
inline Matrix partial_trace_matrix(const Matrix &m, BipartiteShape shape, Keep keep) {
    require_shape(m.rows(), shape);
    const auto [p, q] = shape;
    if (keep == Keep::First) {
        Matrix r(p, p);
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = 0; j < p; ++j) {
                for (std::size_t k = 0; k < q; ++k) {
                    r(i, j) += m(i * q + k, j * q + k);
                }
            }
        }
        return r;
    }
    Matrix r(q, q);
    for (std::size_t k = 0; k < q; ++k) {
        for (std::size_t l = 0; l < q; ++l) {
            for (std::size_t i = 0; i < p; ++i) {
                r(k, l) += m(i * q + k, i * q + l);
            }
        }
    }
    return r;
}

/// Reduced graph. In the real convention the edge weights of the kept factor
/// are sums over the traced index and the loops restore the summed degrees;
/// the complex convention goes through the Laplacian.
inline WeightedGraph partial_trace(const WeightedGraph &g, BipartiteShape shape, Keep keep = Keep::First) {
    require_shape(g.n(), shape);
    if (g.convention() == Convention::ComplexHermitian) {
        return observable_graph(make_hermitian(partial_trace_matrix(laplacian(g).matrix(), shape, keep)),
                                Convention::ComplexHermitian);
    }
    const auto [p, q] = shape;
    const std::size_t kept = keep == Keep::First ? p : q;
    const std::size_t traced = keep == Keep::First ? q : p;
    auto flat = [&](std::size_t a, std::size_t t) { return keep == Keep::First ? a * q + t : t * q + a; };

    const auto d = degrees(g);
    GraphBuilder b(Convention::RealSigned, kept);
    std::vector<double> loop(kept, 0.0);
    for (std::size_t a = 0; a < kept; ++a) {
        for (std::size_t t = 0; t < traced; ++t) {
            loop[a] += d[flat(a, t)];
        }
    }
    for (std::size_t a = 0; a < kept; ++a) {
        for (std::size_t c = a + 1; c < kept; ++c) {
            double w = 0;
            for (std::size_t t = 0; t < traced; ++t) {
                w += g.weight(flat(a, t), flat(c, t)).real();
            }
            if (w != 0.0) {
                b.add_edge(a, c, w);
                loop[a] -= w;
                loop[c] -= w;
            }
        }
    }
    for (std::size_t a = 0; a < kept; ++a) {
        b.add_loop(a, loop[a]);
    }
    return b.build();
}

}  // namespace graphstate
