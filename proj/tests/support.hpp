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

// Fixtures, random generators and independent reference computations shared
// by the unit tests and the acceptance runner. Nothing here calls the
// library routine it is meant to check.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "graphstate/graphstate.hpp"

namespace graphstate::testing {

using C = Complex;
constexpr C I{0.0, 1.0};

inline Matrix scaled_matrix(double s, std::initializer_list<std::initializer_list<C>> rows) {
    return Matrix(rows) * C(s);
}

// ---- fixed states ----

inline Matrix plus_pair_state() {
    return scaled_matrix(0.5, {{1, 1}, {1, 1}});
}
inline Matrix minus_state() {
    return scaled_matrix(0.5, {{1, -1}, {-1, 1}});
}
inline Matrix first_basis_state() {
    return Matrix{{1, 0}, {0, 0}};
}
inline Matrix two_qubit_mixed_state() {
    return scaled_matrix(1.0 / 16, {{9, -1, -1, 1}, {-1, 3, -1, -1}, {-1, -1, 3, -1}, {1, -1, -1, 1}});
}
inline Matrix maximally_mixed(std::size_t n) {
    return Matrix::identity(n) * C(1.0 / static_cast<double>(n));
}
inline Matrix minus_minus_state() {
    return scaled_matrix(0.25, {{1, -1, -1, 1}, {-1, 1, 1, -1}, {-1, 1, 1, -1}, {1, -1, -1, 1}});
}
// |+> (x) (|1> + |2>)/sqrt2 in 2 x 3
inline Matrix plus_state_2x3() {
    Matrix m(6, 6);
    for (std::size_t i : {0, 1, 3, 4}) {
        for (std::size_t j : {0, 1, 3, 4}) {
            m(i, j) = 0.25;
        }
    }
    return m;
}
inline Matrix uniform_four_state() {
    Matrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            m(i, j) = 0.25;
        }
    }
    return m;
}
inline Matrix middle_pair_state() {
    return scaled_matrix(0.25, {{2, 0, 0, 0}, {0, 1, 1, 0}, {0, 1, 1, 0}, {0, 0, 0, 0}});
}
inline Matrix middle_pair_mixture() {
    return scaled_matrix(1.0 / 12, {{5, 1, 1, 1}, {1, 3, 3, 1}, {1, 3, 3, 1}, {1, 1, 1, 1}});
}
inline Matrix two_qubit_mixed_reduced() {
    return scaled_matrix(1.0 / 8, {{6, -1}, {-1, 2}});
}
inline Matrix path_product_state() {
    return scaled_matrix(1.0 / 12, {{1, -1, 0, 0, -1, 1, 0, 0},
                                    {-1, 2, -1, 0, 1, -2, 1, 0},
                                    {0, -1, 2, -1, 0, 1, -2, 1},
                                    {0, 0, -1, 1, 0, 0, 1, -1},
                                    {-1, 1, 0, 0, 1, -1, 0, 0},
                                    {1, -2, 1, 0, -1, 2, -1, 0},
                                    {0, 1, -2, 1, 0, -1, 2, -1},
                                    {0, 0, 1, -1, 0, 0, -1, 1}});
}
inline Matrix looped_k4_state() {
    return scaled_matrix(1.0 / 14, {{4, -1, -1, -1}, {-1, 4, -1, -1}, {-1, -1, 3, -1}, {-1, -1, -1, 3}});
}
inline Matrix signed_k4_state() {
    return scaled_matrix(1.0 / 8, {{1, -1, -1, 1}, {-1, 3, -1, -1}, {-1, -1, 3, -1}, {1, -1, -1, 1}});
}
inline Matrix signed_k4_after_deletion() {
    return scaled_matrix(1.0 / 10, {{2, 0, -1, 1}, {0, 2, -1, -1}, {-1, -1, 3, -1}, {1, -1, -1, 3}});
}
inline Matrix y_plus_state() {
    return scaled_matrix(0.5, {{1, -I}, {I, 1}});
}
inline Matrix y_minus_state() {
    return scaled_matrix(0.5, {{1, I}, {-I, 1}});
}
inline Matrix y_plus_plus_state() {
    return scaled_matrix(0.25, {{1, -I, -I, -1}, {I, 1, 1, -I}, {I, 1, 1, -I}, {-1, I, I, 1}});
}
inline Matrix complex_mixed_state() {
    const double r = 3 + 4 * std::numbers::sqrt2;
    return scaled_matrix(1.0 / 36, {{7, -r * I, -7.0 * I, -r},
                                    {r * I, 11, r, -11.0 * I},
                                    {7.0 * I, r, 7, -r * I},
                                    {-r, 11.0 * I, r * I, 11}});
}
inline Matrix pauli_x() {
    return Matrix{{0, 1}, {1, 0}};
}
inline Matrix pauli_y() {
    return Matrix{{0, -I}, {I, 0}};
}

inline WeightedGraph unit_k2() {
    return WeightedGraph(Convention::RealSigned, 2, {{0, 1, 1.0}});
}
inline WeightedGraph unit_path4() {
    return WeightedGraph(Convention::RealSigned, 4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
}
inline WeightedGraph signed_k4_graph() {
    return WeightedGraph(Convention::RealSigned, 4,
                         {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, -1.0}, {1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
}
inline WeightedGraph looped_k4_graph() {
    std::vector<Edge> e;
    for (Vertex u = 0; u < 4; ++u) {
        for (Vertex v = u + 1; v < 4; ++v) {
            e.push_back({u, v, 3.0});
        }
    }
    return WeightedGraph(Convention::RealSigned, 4, e, {{0, 3.0}, {1, 3.0}});
}

// ---- independent reference computations ----

/// Q built entry by entry from the convention's definitions.
inline Matrix reference_laplacian(const WeightedGraph &g) {
    const std::size_t n = g.n();
    Matrix q(n, n);
    const bool real = g.convention() == Convention::RealSigned;
    for (std::size_t i = 0; i < n; ++i) {
        double d = g.loop(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            const C a = g.weight(i, j);
            d += real ? a.real() : std::abs(a);
            q(i, j) = real ? -a : a;
        }
        q(i, i) = d;
    }
    return q;
}

inline Matrix reference_kron(const Matrix &a, const Matrix &b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < r.rows(); ++i) {
        for (std::size_t j = 0; j < r.cols(); ++j) {
            r(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
        }
    }
    return r;
}

inline Matrix reference_trace_second(const Matrix &m, std::size_t p, std::size_t q) {
    Matrix r(p, p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            C s = 0;
            for (std::size_t k = 0; k < q; ++k) {
                s += m(i * q + k, j * q + k);
            }
            r(i, j) = s;
        }
    }
    return r;
}

inline Matrix reference_trace_first(const Matrix &m, std::size_t p, std::size_t q) {
    Matrix r(q, q);
    for (std::size_t k = 0; k < q; ++k) {
        for (std::size_t l = 0; l < q; ++l) {
            C s = 0;
            for (std::size_t i = 0; i < p; ++i) {
                s += m(i * q + k, i * q + l);
            }
            r(k, l) = s;
        }
    }
    return r;
}

inline Matrix reference_partial_transpose(const Matrix &m, std::size_t p, std::size_t q) {
    const std::size_t n = p * q;
    Matrix r(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            // swap the second-factor indices of row and column
            const std::size_t i = a / q, j = a % q, k = b / q, l = b % q;
            r(i * q + l, k * q + j) = m(a, b);
        }
    }
    return r;
}

/// Eigenvalues from Eigen's self-adjoint solver, ascending.
inline std::vector<double> reference_eigenvalues(const Matrix &m) {
    const std::size_t n = m.rows();
    Eigen::MatrixXcd e(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            e(i, j) = m(i, j);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e, Eigen::EigenvaluesOnly);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = solver.eigenvalues()(i);
    }
    return out;
}

inline double reference_min_eigenvalue(const Matrix &m) {
    return reference_eigenvalues(m).front();
}

inline bool reference_is_psd(const Matrix &m) {
    return reference_min_eigenvalue(m) >= -1e-9 * std::max(1.0, m.frobenius_norm());
}

// ---- random inputs ----

class Random {
   public:
    explicit Random(std::uint64_t seed) : rng_(seed) {
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    std::size_t index(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }
    bool chance(double p) {
        return uniform(0, 1) < p;
    }
    std::mt19937_64 &engine() {
        return rng_;
    }

    /// Magnitude in [lo, hi], random sign.
    double signed_weight(double lo = 0.1, double hi = 2.0) {
        const double m = uniform(lo, hi);
        return chance(0.5) ? m : -m;
    }

    C phase() {
        const double t = uniform(0, 2 * std::numbers::pi);
        return {std::cos(t), std::sin(t)};
    }

    /// Random graph; edges appear with probability `density`.
    WeightedGraph graph(Convention c, std::size_t n, double density, bool positive_edges, bool loops,
                        bool nonnegative_loops) {
        std::vector<Edge> e;
        std::vector<Loop> l;
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                if (!chance(density)) {
                    continue;
                }
                double w = positive_edges ? uniform(0.1, 2.0) : signed_weight();
                if (c == Convention::RealSigned) {
                    e.push_back({u, v, w});
                } else {
                    e.push_back({u, v, std::abs(w) * phase()});
                }
            }
            if (loops && chance(0.5)) {
                l.push_back({u, nonnegative_loops ? uniform(0.1, 2.0) : signed_weight()});
            }
        }
        return WeightedGraph(c, n, e, l);
    }

    /// Random graph that has a density matrix: positive-weight real graph, or
    /// a complex graph with nonnegative loops, then at least one edge or loop.
    WeightedGraph state_graph(Convention c, std::size_t n) {
        for (;;) {
            WeightedGraph g = graph(c, n, 0.6, true, true, true);
            if (!g.edges().empty() || !g.loops().empty()) {
                return g;
            }
        }
    }

    WeightedGraph tree(std::size_t n, bool signed_weights) {
        std::vector<Edge> e;
        for (Vertex v = 1; v < n; ++v) {
            const Vertex parent = index(0, v - 1);
            e.push_back({parent, v, signed_weights ? signed_weight() : uniform(0.1, 2.0)});
        }
        return permute(WeightedGraph(Convention::RealSigned, n, e), random_permutation(n));
    }

    WeightedGraph cycle(std::size_t n, bool signed_weights) {
        std::vector<Edge> e;
        for (Vertex v = 0; v < n; ++v) {
            e.push_back({v, (v + 1) % n, signed_weights ? signed_weight() : uniform(0.1, 2.0)});
        }
        return permute(WeightedGraph(Convention::RealSigned, n, e), random_permutation(n));
    }

    std::vector<Vertex> random_permutation(std::size_t n) {
        std::vector<Vertex> p(n);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = i;
        }
        std::shuffle(p.begin(), p.end(), rng_);
        return p;
    }

    /// Random density matrix of rank `rank` (real entries when `real`).
    Matrix density(std::size_t n, std::size_t rank, bool real) {
        Matrix m(n, n);
        std::normal_distribution<double> gauss;
        for (std::size_t k = 0; k < rank; ++k) {
            Vector v(n);
            for (auto &z : v) {
                z = real ? C(gauss(rng_), 0) : C(gauss(rng_), gauss(rng_));
            }
            m += outer(v, v);
        }
        return m * C(1.0 / m.trace().real());
    }

   private:
    std::mt19937_64 rng_;
};

}  // namespace graphstate::testing
