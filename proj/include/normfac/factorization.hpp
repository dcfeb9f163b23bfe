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
#include <numbers>
#include <numeric>
#include <vector>

#include "normfac/eigen.hpp"
#include "normfac/idempotent.hpp"
#include "normfac/matrix.hpp"
#include "normfac/structure.hpp"
#include "normfac/tolerance.hpp"

namespace normfac {

/// The basic matrix I - E + alpha E.
struct BasicFactor {
    SymmetricIdempotent idempotent;
    Complex eigenvalue;

    ComplexMatrix matrix() const {
        const std::size_t n = idempotent.size();
        return ComplexMatrix::identity(n) + (eigenvalue - 1.0) * idempotent.matrix();
    }

    bool invertible() const { return eigenvalue != Complex(0.0); }

    /// (E, 1/alpha); only meaningful when invertible().
    BasicFactor inverse() const { return {idempotent, 1.0 / eigenvalue}; }
};

/// A normal matrix as a product of commuting basic matrices with distinct
/// eigenvalues, none equal to 1. The eigenvalue-1 projector is kept separately
/// as `residual` = I - sum(E_j).
struct CanonicalFactorization {
    std::size_t size = 0;
    std::vector<BasicFactor> factors;
    SymmetricIdempotent residual = SymmetricIdempotent::zero(0);
    StructureReport class_hint;

    /// Projector onto the kernel (the eigenvalue-0 factor), or zero.
    SymmetricIdempotent kernel() const {
        for (const auto &f : factors) {
            if (f.eigenvalue == Complex(0.0)) {
                return f.idempotent;
            }
        }
        return SymmetricIdempotent::zero(size);
    }
};

/// Principal argument in [0, 2pi); angles within tol.cluster below 2pi wrap to 0.
inline double principal_argument(Complex z, const Tolerances &tol = {}) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::atan2(z.imag(), z.real());
    if (a < 0.0) {
        a += two_pi;
    }
    if (a >= two_pi - tol.cluster) {
        a = 0.0;
    }
    return a;
}

namespace detail {

/// Single-linkage clusters: i and j share a cluster when a chain of values, each
/// within `radius` of the next, joins them. Clusters are listed by first member.
inline std::vector<std::vector<std::size_t>> cluster_values(const std::vector<Complex> &values,
                                                            double radius) {
    const std::size_t n = values.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(values[i] - values[j]) <= radius) {
                const auto a = find(i);
                const auto b = find(j);
                if (a != b) {
                    parent[std::max(a, b)] = std::min(a, b);
                }
            }
        }
    }
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto root = find(i);
        if (slot[root] == n) {
            slot[root] = groups.size();
            groups.emplace_back();
        }
        groups[slot[root]].push_back(i);
    }
    return groups;
}

/// Snap a cluster representative: unit modulus for unitary input, real for
/// Hermitian input, then exactly 1 or 0 when that close.
inline Complex snap_eigenvalue(Complex z, const StructureReport &hint, const Tolerances &tol) {
    if (hint.hermitian) {
        z = Complex(z.real(), 0.0);
    }
    if (hint.unitary && std::abs(z) > 0.0) {
        z /= std::abs(z);
    }
    if (std::abs(z - 1.0) <= tol.cluster) {
        return 1.0;
    }
    if (std::abs(z) <= tol.cluster) {
        return 0.0;
    }
    return z;
}

/// Structure of sum(alpha_j E_j) + F read off the spectrum.
inline StructureReport hint_from_spectrum(const std::vector<BasicFactor> &factors,
                                          const Tolerances &tol) {
    StructureReport r;
    r.normal = true;
    r.unitary = true;
    r.hermitian = true;
    bool all_zero = true;
    for (const auto &f : factors) {
        r.unitary = r.unitary && std::abs(std::abs(f.eigenvalue) - 1.0) <= tol.structural;
        r.hermitian = r.hermitian && std::abs(f.eigenvalue.imag()) <= tol.structural;
        all_zero = all_zero && f.eigenvalue == Complex(0.0);
    }
    r.symmetric_unitary = r.unitary && r.hermitian;
    r.idempotent = all_zero;
    return r;
}

inline bool canonical_less(const BasicFactor &a, const BasicFactor &b, const Tolerances &tol) {
    const double ka = std::round(principal_argument(a.eigenvalue, tol) / tol.cluster);
    const double kb = std::round(principal_argument(b.eigenvalue, tol) / tol.cluster);
    if (ka != kb) {
        return ka < kb;
    }
    return std::abs(a.eigenvalue) < std::abs(b.eigenvalue);
}

/// Builds the canonical form from (projector, eigenvalue) pairs whose projectors
/// are mutually orthogonal: snaps eigenvalues, merges equal ones (their
/// projectors add), moves eigenvalue 1 into the residual and sorts.
inline CanonicalFactorization assemble(std::size_t n, std::vector<BasicFactor> parts,
                                       const StructureReport &hint, const Tolerances &tol,
                                       bool validate) {
    if (validate) {
        std::vector<SymmetricIdempotent> projectors;
        projectors.reserve(parts.size());
        for (const auto &p : parts) {
            projectors.push_back(p.idempotent);
        }
        (void)make_family(n, std::move(projectors), tol);
    }

    std::vector<Complex> values;
    values.reserve(parts.size());
    double largest = 0.0;
    for (const auto &p : parts) {
        values.push_back(snap_eigenvalue(p.eigenvalue, hint, tol));
        largest = std::max(largest, std::abs(values.back()));
    }
    const double radius = tol.cluster * std::max(1.0, largest);

    CanonicalFactorization out;
    out.size = n;
    std::size_t rank_sum = 0;
    ComplexMatrix covered = ComplexMatrix::zeros(n, n);
    for (const auto &group : cluster_values(values, radius)) {
        Complex mean{};
        for (auto i : group) {
            mean += values[i];
        }
        mean /= static_cast<double>(group.size());
        const Complex alpha = snap_eigenvalue(mean, hint, tol);
        if (alpha == Complex(1.0)) {
            continue;
        }
        if (group.size() == 1) {
            out.factors.push_back({parts[group.front()].idempotent, alpha});
        } else {
            ComplexMatrix sum = ComplexMatrix::zeros(n, n);
            for (auto i : group) {
                sum += parts[i].idempotent.matrix();
            }
            out.factors.push_back({SymmetricIdempotent(std::move(sum), tol), alpha});
        }
        rank_sum += out.factors.back().idempotent.rank();
        covered += out.factors.back().idempotent.matrix();
    }

    if (rank_sum >= n) {
        out.residual = SymmetricIdempotent::zero(n);
    } else {
        out.residual = SymmetricIdempotent(ComplexMatrix::identity(n) - covered, tol);
    }
    std::stable_sort(out.factors.begin(), out.factors.end(),
                     [&](const BasicFactor &a, const BasicFactor &b) {
                         return canonical_less(a, b, tol);
                     });
    out.class_hint = hint;
    return out;
}

} // namespace detail

/// Canonical factorization from a computed spectrum: `vectors` columns are
/// orthonormal eigenvectors aligned with `values`. Eigenvalues are clustered
/// (single linkage, radius tol.cluster * max(1, max|lambda|)); each cluster's
/// projector is the sum of v v^* over its eigenvectors.
inline CanonicalFactorization factor_spectrum(const std::vector<Complex> &values,
                                              const ComplexMatrix &vectors,
                                              const StructureReport &hint,
                                              const Tolerances &tol = {}) {
    const std::size_t n = vectors.rows();
    double largest = 0.0;
    for (const auto &v : values) {
        largest = std::max(largest, std::abs(v));
    }
    const double radius = tol.cluster * std::max(1.0, largest);

    std::vector<BasicFactor> parts;
    for (const auto &group : detail::cluster_values(values, radius)) {
        Complex mean{};
        ComplexMatrix projector = ComplexMatrix::zeros(n, n);
        for (auto i : group) {
            mean += values[i];
            projector += outer(vectors.col(i));
        }
        mean /= static_cast<double>(group.size());
        parts.push_back({SymmetricIdempotent(std::move(projector), tol), mean});
    }
    return detail::assemble(n, std::move(parts), hint, tol, /*validate=*/false);
}

/// Factor a normal matrix into its canonical product of basic matrices.
inline CanonicalFactorization factor_normal(const ComplexMatrix &a, const Tolerances &tol = {}) {
    const auto hint = classify(a, tol);
    if (!hint.normal) {
        throw Error(ErrorCode::NotNormal, "matrix is not normal (A A^* != A^* A)");
    }
    if (hint.hermitian) {
        const auto sys = hermitian_eigen(a, tol);
        std::vector<Complex> values(sys.values.begin(), sys.values.end());
        return factor_spectrum(values, sys.vectors, hint, tol);
    }
    const auto sys = normal_eigen(a, tol);
    return factor_spectrum(sys.values, sys.vectors, hint, tol);
}

/// Sum form: sum(alpha_j E_j) + residual.
inline ComplexMatrix reconstruct(const CanonicalFactorization &f) {
    ComplexMatrix out = f.residual.matrix();
    for (const auto &factor : f.factors) {
        out += factor.eigenvalue * factor.idempotent.matrix();
    }
    return out;
}

/// Product form: prod_j (I - E_j + alpha_j E_j). Equal to reconstruct() for
/// mutually orthogonal projectors.
inline ComplexMatrix product_form(const CanonicalFactorization &f) {
    ComplexMatrix out = ComplexMatrix::identity(f.size);
    for (const auto &factor : f.factors) {
        out = out * factor.matrix();
    }
    return out;
}

struct CanonicalDistance {
    bool comparable = false;   // same size and factor count, eigenvalues matched
    double eigenvalue = 0.0;   // worst |alpha - beta| over matched factors
    double idempotent = 0.0;   // worst Frobenius distance over matched projectors and residuals
};

/// Order-blind comparison: each factor of `a` is matched with the nearest unused
/// eigenvalue of `b`.
inline CanonicalDistance canonical_distance(const CanonicalFactorization &a,
                                            const CanonicalFactorization &b) {
    CanonicalDistance d;
    if (a.size != b.size || a.factors.size() != b.factors.size()) {
        return d;
    }
    std::vector<bool> used(b.factors.size(), false);
    for (const auto &fa : a.factors) {
        std::size_t best = b.factors.size();
        double best_gap = 0.0;
        for (std::size_t j = 0; j < b.factors.size(); ++j) {
            if (used[j]) {
                continue;
            }
            const double gap = std::abs(fa.eigenvalue - b.factors[j].eigenvalue);
            if (best == b.factors.size() || gap < best_gap) {
                best = j;
                best_gap = gap;
            }
        }
        used[best] = true;
        d.eigenvalue = std::max(d.eigenvalue, best_gap);
        d.idempotent = std::max(d.idempotent, frobenius_distance(fa.idempotent.matrix(),
                                                                 b.factors[best].idempotent.matrix()));
    }
    d.idempotent =
        std::max(d.idempotent, frobenius_distance(a.residual.matrix(), b.residual.matrix()));
    d.comparable = true;
    return d;
}

/// Executable uniqueness: equal factor counts, eigenvalues within
/// tol.cluster * max(1, |alpha|), projectors and residuals within 10 * tol.structural.
inline bool canonical_equal(const CanonicalFactorization &a, const CanonicalFactorization &b,
                            const Tolerances &tol = {}) {
    const auto d = canonical_distance(a, b);
    if (!d.comparable) {
        return false;
    }
    double largest = 1.0;
    for (const auto &f : a.factors) {
        largest = std::max(largest, std::abs(f.eigenvalue));
    }
    return d.eigenvalue <= tol.cluster * largest && d.idempotent <= 10.0 * tol.structural;
}

/// Factorization built from explicit basic factors with mutually orthogonal
/// projectors. Equal eigenvalues are merged and eigenvalue-1 factors dropped.
inline CanonicalFactorization from_factors(std::size_t n, std::vector<BasicFactor> factors,
                                           const Tolerances &tol = {}) {
    const auto hint = detail::hint_from_spectrum(factors, tol);
    return detail::assemble(n, std::move(factors), hint, tol, /*validate=*/true);
}

/// Moore-Penrose inverse: invert every nonzero eigenvalue, drop the kernel.
/// In product form this is prod_j (I - E_j + alpha_j^{-1} E_j) (I - E_0) with E_0
/// the kernel projector; the sum form below is the same matrix.
inline ComplexMatrix pseudo_inverse(const CanonicalFactorization &f) {
    ComplexMatrix out = f.residual.matrix();
    for (const auto &factor : f.factors) {
        if (factor.invertible()) {
            out += (1.0 / factor.eigenvalue) * factor.idempotent.matrix();
        }
    }
    return out;
}

/// E with A = I - 2E for a normal involution A (A^2 = I).
inline SymmetricIdempotent involution_idempotent(const ComplexMatrix &a, const Tolerances &tol = {}) {
    if (!a.is_square()) {
        throw Error(ErrorCode::NotInvolution, "involution must be square, got " + a.shape());
    }
    const std::size_t n = a.rows();
    if (!classify(a, tol).normal) {
        throw Error(ErrorCode::NotInvolution, "matrix is not normal");
    }
    const double defect = frobenius_distance(a * a, ComplexMatrix::identity(n));
    if (defect > tol.structural * std::sqrt(static_cast<double>(n))) {
        throw Error(ErrorCode::NotInvolution, "A^2 != I (residual " + std::to_string(defect) + ")");
    }
    try {
        return SymmetricIdempotent(0.5 * (ComplexMatrix::identity(n) - a), tol);
    } catch (const Error &e) {
        throw Error(ErrorCode::NotInvolution, e.what());
    }
}

struct ScaledInvolution {
    double scale;
    SymmetricIdempotent idempotent;
};

/// H = scale (I - 2E) for Hermitian H with H^2 = c I, c > 0 (scale = sqrt(c)).
inline ScaledInvolution scaled_involution_idempotent(const ComplexMatrix &h,
                                                     const Tolerances &tol = {}) {
    if (!h.is_square()) {
        throw Error(ErrorCode::NotScaledInvolution, "matrix must be square, got " + h.shape());
    }
    const std::size_t n = h.rows();
    if (!classify(h, tol).hermitian) {
        throw Error(ErrorCode::NotScaledInvolution, "matrix is not Hermitian");
    }
    const ComplexMatrix square = h * h;
    const double c = trace(square).real() / static_cast<double>(n);
    if (!(c > 0.0)) {
        throw Error(ErrorCode::NotScaledInvolution, "H^2 has no positive scale");
    }
    const double defect = frobenius_distance(square, c * ComplexMatrix::identity(n));
    if (defect > tol.structural * c * std::sqrt(static_cast<double>(n))) {
        throw Error(ErrorCode::NotScaledInvolution,
                    "H^2 is not a multiple of I (residual " + std::to_string(defect) + ")");
    }
    const double scale = std::sqrt(c);
    try {
        return {scale, SymmetricIdempotent(0.5 * (ComplexMatrix::identity(n) - (1.0 / scale) * h), tol)};
    } catch (const Error &e) {
        throw Error(ErrorCode::NotScaledInvolution, e.what());
    }
}

} // namespace normfac
