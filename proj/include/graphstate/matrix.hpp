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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "graphstate/error.hpp"

namespace graphstate {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Dense row-major complex matrix.
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw Error(ErrorKind::InvalidMatrix, "ragged matrix literal");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static Matrix diagonal(std::span<const double> values) {
        Matrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            m(i, i) = values[i];
        }
        return m;
    }

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    bool is_square() const noexcept {
        return rows_ == cols_;
    }

    Complex &operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const Complex &operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    std::span<const Complex> data() const noexcept {
        return data_;
    }

    Matrix adjoint() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                r(j, i) = std::conj((*this)(i, j));
            }
        }
        return r;
    }

    Complex trace() const {
        Complex t = 0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    double frobenius_norm() const {
        double s = 0;
        for (const auto &z : data_) {
            s += std::norm(z);
        }
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0;
        for (const auto &z : data_) {
            m = std::max(m, std::abs(z));
        }
        return m;
    }

    Matrix &operator+=(const Matrix &o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += o.data_[k];
        }
        return *this;
    }
    Matrix &operator-=(const Matrix &o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }
    Matrix &operator*=(Complex s) {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix &b) {
        a += b;
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix &b) {
        a -= b;
        return a;
    }
    friend Matrix operator*(Matrix a, Complex s) {
        a *= s;
        return a;
    }
    friend Matrix operator*(Complex s, Matrix a) {
        a *= s;
        return a;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.cols_ != b.rows_) {
            throw Error(ErrorKind::DimensionMismatch, "matrix product shapes do not agree");
        }
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    r(i, j) += aik * b(k, j);
                }
            }
        }
        return r;
    }

    friend Vector operator*(const Matrix &a, const Vector &x) {
        if (a.cols_ != x.size()) {
            throw Error(ErrorKind::DimensionMismatch, "matrix-vector shapes do not agree");
        }
        Vector r(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) {
                r[i] += a(i, j) * x[j];
            }
        }
        return r;
    }

    bool operator==(const Matrix &) const = default;

   private:
    void check_same_shape(const Matrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw Error(ErrorKind::DimensionMismatch, "matrix shapes differ");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return r;
}

/// |a><b|
inline Matrix outer(const Vector &a, const Vector &b) {
    Matrix r(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return r;
}

inline Complex inner(const Vector &a, const Vector &b) {
    Complex s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

inline double norm(const Vector &a) {
    return std::sqrt(std::real(inner(a, a)));
}

inline Vector basis_vector(std::size_t n, std::size_t i) {
    Vector v(n);
    v[i] = 1.0;
    return v;
}

inline double max_abs_diff(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "matrix shapes differ");
    }
    double m = 0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    }
    return m;
}

inline bool approx_equal(const Matrix &a, const Matrix &b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

/// Square matrix equal to its conjugate transpose. Entries within `tol` of
/// hermitian are accepted and then symmetrized so the invariant is exact.
class HermitianMatrix {
   public:
    HermitianMatrix() = default;

    explicit HermitianMatrix(Matrix m, double tol = 0.0) : m_(std::move(m)) {
        if (!m_.is_square()) {
            throw Error(ErrorKind::InvalidMatrix, "hermitian matrix must be square");
        }
        const std::size_t n = m_.rows();
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(m_(i, i).imag()) > tol) {
                throw Error(ErrorKind::InvalidMatrix, "diagonal entry is not real");
            }
            m_(i, i) = m_(i, i).real();
            for (std::size_t j = i + 1; j < n; ++j) {
                if (std::abs(m_(i, j) - std::conj(m_(j, i))) > tol) {
                    throw Error(ErrorKind::InvalidMatrix, "matrix is not hermitian");
                }
                const Complex avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
                m_(i, j) = avg;
                m_(j, i) = std::conj(avg);
            }
        }
    }

    std::size_t n() const noexcept {
        return m_.rows();
    }
    const Matrix &matrix() const noexcept {
        return m_;
    }
    const Complex &operator()(std::size_t i, std::size_t j) const {
        return m_(i, j);
    }
    double trace() const {
        return m_.trace().real();
    }

    bool operator==(const HermitianMatrix &) const = default;

   private:
    Matrix m_;
};

/// Tolerance used when a computed matrix is expected to be hermitian up to rounding.
inline double hermitian_tolerance(const Matrix &m) {
    return 1e-12 * std::max(1.0, m.max_abs());
}

inline HermitianMatrix make_hermitian(Matrix m) {
    const double tol = hermitian_tolerance(m);
    return HermitianMatrix(std::move(m), tol);
}

}  // namespace graphstate
