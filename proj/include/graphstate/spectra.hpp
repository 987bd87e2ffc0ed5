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
#include <numeric>
#include <vector>

#include "graphstate/error.hpp"
#include "graphstate/matrix.hpp"

namespace graphstate {

struct JacobiOptions {
    int max_sweeps = 100;
    // Converged once every off-diagonal magnitude is below this times ||A||_F.
    double relative_threshold = 1e-14;
};

/// Absolute tolerance for comparing eigenvalues of `a`.
inline double eigen_tolerance(const HermitianMatrix &a) {
    return 1e-10 * std::max(1.0, a.matrix().frobenius_norm());
}

/// Slack allowed below zero before a matrix is declared not positive semidefinite.
inline double psd_tolerance(const HermitianMatrix &a) {
    return 1e-9 * std::max(1.0, a.matrix().frobenius_norm());
}

namespace detail {

struct Eigensystem {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k belongs to values[k]; empty unless requested
};

// Cyclic complex Jacobi. Each rotation first removes the phase of the pivot
// and then applies the usual real symmetric rotation.
inline Eigensystem jacobi(const HermitianMatrix &h, bool want_vectors, const JacobiOptions &opt = {}) {
    const std::size_t n = h.n();
    Matrix a = h.matrix();
    Matrix v = want_vectors ? Matrix::identity(n) : Matrix();
    const double threshold = opt.relative_threshold * a.frobenius_norm();

    auto max_off = [&] {
        double m = 0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                m = std::max(m, std::abs(a(p, q)));
            }
        }
        return m;
    };

    for (int sweep = 0;; ++sweep) {
        const double off = max_off();
        if (off == 0.0 || off < threshold) {
            break;
        }
        if (sweep >= opt.max_sweeps) {
            throw Error(ErrorKind::NoConvergence, "Jacobi iteration exceeded the sweep cap", off);
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) {
                    continue;
                }
                const Complex phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * mag;
                a(q, q) = aqq + t * mag;

                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex vkp = v(k, p);
                        const Complex vkq = v(k, q);
                        v(k, p) = vkp * jpp + vkq * jqp;
                        v(k, q) = vkp * jpq + vkq * jqq;
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    Eigensystem out;
    out.values.reserve(n);
    for (std::size_t k : order) {
        out.values.push_back(a(k, k).real());
    }
    if (want_vectors) {
        out.vectors = Matrix(n, n);
        for (std::size_t col = 0; col < n; ++col) {
            for (std::size_t row = 0; row < n; ++row) {
                out.vectors(row, col) = v(row, order[col]);
            }
        }
    }
    return out;
}

}  // namespace detail

/// Eigenvalues in ascending order.
inline std::vector<double> eigenvalues(const HermitianMatrix &a, const JacobiOptions &opt = {}) {
    return detail::jacobi(a, false, opt).values;
}

inline double min_eigenvalue(const HermitianMatrix &a) {
    const auto ev = eigenvalues(a);
    return ev.empty() ? 0.0 : ev.front();
}

inline bool is_psd(const HermitianMatrix &a) {
    return min_eigenvalue(a) >= -psd_tolerance(a);
}

}  // namespace graphstate
