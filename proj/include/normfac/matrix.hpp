// Copyright 2026 The normfac Authors
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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "normfac/error.hpp"

namespace normfac {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

namespace detail {

template <typename T> struct is_complex : std::false_type {};
template <typename T> struct is_complex<std::complex<T>> : std::true_type {};

template <typename T> bool is_finite(const T &x) {
    if constexpr (is_complex<T>::value) {
        return std::isfinite(x.real()) && std::isfinite(x.imag());
    } else {
        return std::isfinite(x);
    }
}

template <typename T> T conjugate(const T &x) {
    if constexpr (is_complex<T>::value) {
        return std::conj(x);
    } else {
        return x;
    }
}

} // namespace detail

/// Dense row-major matrix. Every constructor that accepts entries rejects NaN/Inf.
template <typename T> class Matrix {
  public:
    using value_type = T;

    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw Error(ErrorCode::DimensionMismatch,
                        "expected " + std::to_string(rows_ * cols_) + " entries, got " +
                            std::to_string(data_.size()));
        }
        check_finite();
    }

    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
        check_finite();
    }

    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    static Matrix diagonal(std::span<const T> values) {
        Matrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            m(i, i) = values[i];
        }
        return m;
    }

    /// Column vector (n x 1).
    static Matrix column(std::span<const T> values) {
        return Matrix(values.size(), 1, std::vector<T>(values.begin(), values.end()));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> data() const noexcept { return data_; }
    std::span<T> data() noexcept { return data_; }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            out[i] = (*this)(i, j);
        }
        return out;
    }

    void set_col(std::size_t j, std::span<const T> values) {
        for (std::size_t i = 0; i < rows_; ++i) {
            (*this)(i, j) = values[i];
        }
    }

    Matrix &operator+=(const Matrix &other) {
        require_same_shape(other);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += other.data_[k];
        }
        return *this;
    }

    Matrix &operator-=(const Matrix &other) {
        require_same_shape(other);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= other.data_[k];
        }
        return *this;
    }

    Matrix &operator*=(const T &scalar) {
        for (auto &x : data_) {
            x *= scalar;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T &s) { return a *= s; }
    friend Matrix operator*(const T &s, Matrix a) { return a *= s; }
    friend Matrix operator-(Matrix a) { return a *= T(-1); }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.cols_ != b.rows_) {
            throw Error(ErrorCode::DimensionMismatch,
                        "cannot multiply " + a.shape() + " by " + b.shape());
        }
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                if (aik == T(0)) {
                    continue;
                }
                const T *brow = &b.data_[k * b.cols_];
                T *orow = &out.data_[i * out.cols_];
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    orow[j] += aik * brow[j];
                }
            }
        }
        return out;
    }

    friend bool operator==(const Matrix &a, const Matrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  private:
    void check_finite() const {
        for (const auto &x : data_) {
            if (!detail::is_finite(x)) {
                throw Error(ErrorCode::NonFinite, "matrix entry is NaN or infinite");
            }
        }
    }

    void require_same_shape(const Matrix &other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw Error(ErrorCode::DimensionMismatch, shape() + " vs " + other.shape());
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ComplexMatrix = Matrix<Complex>;
using ColumnVector = std::vector<Complex>;

/// Conjugate transpose.
template <typename T> Matrix<T> adjoint(const Matrix<T> &a) {
    Matrix<T> out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = detail::conjugate(a(i, j));
        }
    }
    return out;
}

template <typename T> double frobenius_norm(const Matrix<T> &a) {
    double sum = 0.0;
    for (const auto &x : a.data()) {
        sum += std::norm(x);
    }
    return std::sqrt(sum);
}

template <typename T> double frobenius_distance(const Matrix<T> &a, const Matrix<T> &b) {
    return frobenius_norm(a - b);
}

/// Largest entrywise modulus of a - b.
template <typename T> double max_abs_difference(const Matrix<T> &a, const Matrix<T> &b) {
    const auto diff = a - b;
    double best = 0.0;
    for (const auto &x : diff.data()) {
        best = std::max(best, static_cast<double>(std::abs(x)));
    }
    return best;
}

template <typename T> T trace(const Matrix<T> &a) {
    if (!a.is_square()) {
        throw Error(ErrorCode::NonSquare, "trace of " + a.shape());
    }
    T sum{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        sum += a(i, i);
    }
    return sum;
}

/// a^m by repeated squaring; m = 0 gives the identity.
template <typename T> Matrix<T> matrix_power(const Matrix<T> &a, unsigned m) {
    if (!a.is_square()) {
        throw Error(ErrorCode::NonSquare, "power of " + a.shape());
    }
    Matrix<T> result = Matrix<T>::identity(a.rows());
    Matrix<T> base = a;
    while (m > 0) {
        if (m & 1U) {
            result = result * base;
        }
        m >>= 1U;
        if (m > 0) {
            base = base * base;
        }
    }
    return result;
}

// Vector helpers. ColumnVector is a plain sequence; these keep the algorithms readable.

inline Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
    Complex sum{};
    for (std::size_t i = 0; i < u.size(); ++i) {
        sum += std::conj(u[i]) * v[i];
    }
    return sum;
}

inline double norm2(std::span<const Complex> v) {
    double sum = 0.0;
    for (const auto &x : v) {
        sum += std::norm(x);
    }
    return std::sqrt(sum);
}

/// u u^*
inline ComplexMatrix outer(std::span<const Complex> u) {
    ComplexMatrix out(u.size(), u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < u.size(); ++j) {
            out(i, j) = u[i] * std::conj(u[j]);
        }
    }
    return out;
}

} // namespace normfac
