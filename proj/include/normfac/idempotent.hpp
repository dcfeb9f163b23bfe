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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "normfac/matrix.hpp"
#include "normfac/orthonormalize.hpp"
#include "normfac/tolerance.hpp"

namespace normfac {

/// An orthogonal projector: E^2 = E and E^* = E.
///
/// Construction validates; a live object always satisfies the invariants, and its
/// rank is the rounded trace.
class SymmetricIdempotent {
  public:
    explicit SymmetricIdempotent(ComplexMatrix m, const Tolerances &tol = {})
        : matrix_(std::move(m)) {
        if (!matrix_.is_square()) {
            throw Error(ErrorCode::NonSquare, "idempotent must be square, got " + matrix_.shape());
        }
        const double norm = frobenius_norm(matrix_);
        const double asym = frobenius_distance(matrix_, adjoint(matrix_));
        if (asym > tol.structural) {
            throw Error(ErrorCode::NotHermitian,
                        "idempotent is not self-adjoint (residual " + std::to_string(asym) + ")");
        }
        const double defect = frobenius_distance(matrix_ * matrix_, matrix_);
        if (defect > tol.structural * std::max(1.0, norm)) {
            throw Error(ErrorCode::NotIdempotent,
                        "E^2 != E (residual " + std::to_string(defect) + ")");
        }
        const double tr = trace(matrix_).real();
        const double nearest = std::round(tr);
        const double n = static_cast<double>(matrix_.rows());
        if (std::abs(tr - nearest) > tol.cluster * n || nearest < 0.0) {
            throw Error(ErrorCode::TraceNotInteger,
                        "trace " + std::to_string(tr) + " is not a nonnegative integer");
        }
        rank_ = static_cast<std::size_t>(nearest);
    }

    static SymmetricIdempotent zero(std::size_t n) {
        return SymmetricIdempotent(ComplexMatrix::zeros(n, n));
    }

    static SymmetricIdempotent identity(std::size_t n) {
        return SymmetricIdempotent(ComplexMatrix::identity(n));
    }

    const ComplexMatrix &matrix() const noexcept { return matrix_; }
    std::size_t size() const noexcept { return matrix_.rows(); }
    std::size_t rank() const noexcept { return rank_; }
    bool is_zero() const noexcept { return rank_ == 0; }

  private:
    ComplexMatrix matrix_;
    std::size_t rank_ = 0;
};

/// Rank of a projector, read off its trace.
inline std::size_t rank_of(const SymmetricIdempotent &e) { return e.rank(); }

/// u u^* for a unit vector u.
inline SymmetricIdempotent pure_from_vector(std::span<const Complex> u, const Tolerances &tol = {}) {
    const double len = norm2(u);
    if (std::abs(len - 1.0) > tol.structural) {
        throw Error(ErrorCode::NotUnit, "vector norm is " + std::to_string(len));
    }
    return SymmetricIdempotent(outer(u), tol);
}

/// Number of leading zero entries; |x| <= tol.structural counts as zero.
inline std::size_t st_index(std::span<const Complex> v, const Tolerances &tol = {}) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > tol.structural) {
            return i;
        }
    }
    throw Error(ErrorCode::ZeroVector, "st index of a zero vector");
}

namespace detail {

/// Index of the first column whose 2-norm exceeds `threshold`, or cols() if none.
inline std::size_t first_nonzero_column(const ComplexMatrix &m, double threshold) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            sum += std::norm(m(i, j));
        }
        if (std::sqrt(sum) > threshold) {
            return j;
        }
    }
    return m.cols();
}

inline double column_threshold(const ComplexMatrix &m, const Tolerances &tol) {
    return tol.cluster * std::max(1.0, frobenius_norm(m));
}

} // namespace detail

/// st index of a projector: the number of leading zero columns (and rows).
inline std::size_t st_index(const SymmetricIdempotent &e, const Tolerances &tol = {}) {
    const auto j = detail::first_nonzero_column(e.matrix(), detail::column_threshold(e.matrix(), tol));
    if (j == e.size()) {
        throw Error(ErrorCode::ZeroVector, "st index of the zero projector");
    }
    return j;
}

/// Rank-1 parts with strictly increasing st index; the unique such split of a projector.
struct PureDecomposition {
    std::vector<SymmetricIdempotent> parts;
    std::vector<std::size_t> st_indices;

    std::size_t size() const noexcept { return parts.size(); }

    ComplexMatrix sum(std::size_t n) const {
        ComplexMatrix total(n, n);
        for (const auto &p : parts) {
            total += p.matrix();
        }
        return total;
    }
};

/// Splits E into rank-1 projectors by repeatedly peeling u u^* off the first
/// nonzero column v (u = v / |v|) until nothing is left.
///
/// The residual is re-checked for idempotency after every step. The zero
/// projector yields an empty decomposition.
inline PureDecomposition decompose_pure(const SymmetricIdempotent &e, const Tolerances &tol = {}) {
    const std::size_t n = e.size();
    const double threshold = detail::column_threshold(e.matrix(), tol);
    ComplexMatrix residual = e.matrix();
    PureDecomposition out;

    for (;;) {
        const std::size_t j = detail::first_nonzero_column(residual, threshold);
        if (j == n) {
            break;
        }
        if (out.parts.size() == n) {
            throw Error(ErrorCode::MaxIterations,
                        "more than " + std::to_string(n) + " rank-1 parts; input is not a projector");
        }
        if (!out.st_indices.empty() && j <= out.st_indices.back()) {
            throw Error(ErrorCode::NotIdempotent,
                        "st index did not increase (column " + std::to_string(j) + ")");
        }
        auto v = residual.col(j);
        const double len = norm2(v);
        for (auto &x : v) {
            x /= len;
        }
        SymmetricIdempotent part(outer(v), tol);
        residual -= part.matrix();

        const double defect = frobenius_distance(residual * residual, residual);
        if (defect > tol.structural * std::max(1.0, frobenius_norm(residual))) {
            throw Error(ErrorCode::NotIdempotent,
                        "residual lost idempotency after peeling column " + std::to_string(j) +
                            " (defect " + std::to_string(defect) + ")");
        }
        out.parts.push_back(std::move(part));
        out.st_indices.push_back(j);
    }

    if (out.parts.size() != e.rank()) {
        throw Error(ErrorCode::NotIdempotent, "produced " + std::to_string(out.parts.size()) +
                                                  " parts for a rank " +
                                                  std::to_string(e.rank()) + " projector");
    }
    return out;
}

/// Rank-1 split from an orthonormal basis of the column space. Not unique; used
/// as an independent check on decompose_pure (the sums must agree).
inline std::vector<SymmetricIdempotent> column_space_decomposition(const SymmetricIdempotent &e,
                                                                   const Tolerances &tol = {}) {
    std::vector<ColumnVector> columns;
    columns.reserve(e.size());
    for (std::size_t j = 0; j < e.size(); ++j) {
        columns.push_back(e.matrix().col(j));
    }
    std::vector<SymmetricIdempotent> parts;
    if (e.is_zero()) {
        return parts;
    }
    for (const auto &b : orthonormalize(columns, tol)) {
        parts.emplace_back(outer(b), tol);
    }
    return parts;
}

/// Mutually orthogonal projectors plus the complement I - sum(members).
struct OrthogonalFamily {
    std::size_t n = 0;
    std::vector<SymmetricIdempotent> members;
    SymmetricIdempotent residual = SymmetricIdempotent::zero(0);
    bool complete = false;

    std::size_t total_rank() const {
        std::size_t r = 0;
        for (const auto &m : members) {
            r += m.rank();
        }
        return r;
    }
};

inline OrthogonalFamily make_family(std::size_t n, std::vector<SymmetricIdempotent> members,
                                    const Tolerances &tol = {}) {
    std::size_t rank_sum = 0;
    for (const auto &m : members) {
        if (m.size() != n) {
            throw Error(ErrorCode::DimensionMismatch,
                        "family member of size " + std::to_string(m.size()) + " in C^" +
                            std::to_string(n));
        }
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            const double overlap = frobenius_norm(members[i].matrix() * members[j].matrix());
            if (overlap > tol.structural) {
                throw NotOrthogonalError(i, j, overlap);
            }
        }
        rank_sum += members[i].rank();
    }
    if (rank_sum > n) {
        throw Error(ErrorCode::RankOverflow,
                    "ranks sum to " + std::to_string(rank_sum) + " in C^" + std::to_string(n));
    }

    OrthogonalFamily family;
    family.n = n;
    family.complete = rank_sum == n;
    if (family.complete) {
        family.residual = SymmetricIdempotent::zero(n);
    } else {
        ComplexMatrix rest = ComplexMatrix::identity(n);
        for (const auto &m : members) {
            rest -= m.matrix();
        }
        family.residual = SymmetricIdempotent(std::move(rest), tol);
    }
    family.members = std::move(members);
    return family;
}

} // namespace normfac
