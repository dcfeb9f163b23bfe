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
#include <limits>
#include <numeric>
#include <vector>

#include "normfac/matrix.hpp"
#include "normfac/structure.hpp"
#include "normfac/tolerance.hpp"

namespace normfac {

template <typename Value> struct EigenSystem {
    std::vector<Value> values;
    /// Column i is the unit eigenvector for values[i].
    ComplexMatrix vectors;
};

using HermitianEigenSystem = EigenSystem<double>;
using NormalEigenSystem = EigenSystem<Complex>;

inline constexpr int kMaxJacobiSweeps = 30;

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix &a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                sum += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(sum);
}

/// Cyclic Jacobi on a Hermitian matrix, no input checks. Eigenvalues are
/// returned unsorted, aligned with the columns of the accumulated rotation.
inline HermitianEigenSystem jacobi_sweeps(ComplexMatrix a) {
    const std::size_t n = a.rows();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = frobenius_norm(a);
    const double target = std::numeric_limits<double>::epsilon() * scale;

    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
    }

    int sweep = 0;
    while (off_diagonal_norm(a) > target) {
        if (++sweep > kMaxJacobiSweeps) {
            throw Error(ErrorCode::NoConvergence,
                        "Jacobi did not converge in " + std::to_string(kMaxJacobiSweeps) +
                            " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) {
                    continue;
                }
                // Phase e^{-i phi} on coordinate q makes the (p,q) entry real and
                // positive; then a real rotation annihilates it.
                const Complex phase = std::conj(apq) / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on coordinates (p, q).
                const Complex gpp = c;
                const Complex gpq = s;
                const Complex gqp = -s * phase;
                const Complex gqq = c * phase;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
            }
        }
    }

    HermitianEigenSystem out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = a(i, i).real();
    }
    out.vectors = std::move(v);
    return out;
}

template <typename Value>
EigenSystem<Value> permute_columns(const EigenSystem<Value> &sys,
                                   const std::vector<std::size_t> &order) {
    EigenSystem<Value> out;
    out.values.reserve(order.size());
    out.vectors = ComplexMatrix(sys.vectors.rows(), order.size());
    for (std::size_t j = 0; j < order.size(); ++j) {
        out.values.push_back(sys.values[order[j]]);
        out.vectors.set_col(j, sys.vectors.col(order[j]));
    }
    return out;
}

} // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Eigenvalues ascend; throws NotHermitian or NoConvergence.
inline HermitianEigenSystem hermitian_eigen(const ComplexMatrix &h, const Tolerances &tol = {}) {
    if (!classify(h, tol).hermitian) {
        throw Error(ErrorCode::NotHermitian, "hermitian_eigen input is not Hermitian");
    }
    // Average with the adjoint so the rotations see an exactly Hermitian matrix.
    auto sys = detail::jacobi_sweeps(0.5 * (h + adjoint(h)));
    std::vector<std::size_t> order(sys.values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return sys.values[i] < sys.values[j]; });
    return detail::permute_columns(sys, order);
}

/// Eigendecomposition of a normal matrix B.
///
/// B = H1 + i H2 with H1 = (B + B^*)/2 and H2 = (B - B^*)/(2i) Hermitian and
/// commuting. H1 is diagonalized first; inside each cluster of equal H1
/// eigenvalues, H2 restricted to that eigenspace is diagonalized. The eigenvalue
/// attached to each final vector is its Rayleigh quotient v^* B v.
inline NormalEigenSystem normal_eigen(const ComplexMatrix &b, const Tolerances &tol = {}) {
    if (!classify(b, tol).normal) {
        throw Error(ErrorCode::NotNormal, "normal_eigen input is not normal");
    }
    const std::size_t n = b.rows();
    const auto b_star = adjoint(b);
    const ComplexMatrix h1 = 0.5 * (b + b_star);
    const ComplexMatrix h2 = Complex(0.0, -0.5) * (b - b_star);

    auto real_part = detail::jacobi_sweeps(h1);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return real_part.values[i] < real_part.values[j];
    });
    real_part = detail::permute_columns(real_part, order);

    double spread = 0.0;
    for (double x : real_part.values) {
        spread = std::max(spread, std::abs(x));
    }
    const double gap = tol.cluster * std::max(1.0, spread);

    ComplexMatrix vectors(n, n);
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && real_part.values[end] - real_part.values[end - 1] <= gap) {
            ++end;
        }
        const std::size_t m = end - start;
        if (m == 1) {
            vectors.set_col(start, real_part.vectors.col(start));
        } else {
            ComplexMatrix basis(n, m);
            for (std::size_t j = 0; j < m; ++j) {
                basis.set_col(j, real_part.vectors.col(start + j));
            }
            const ComplexMatrix restricted = adjoint(basis) * h2 * basis;
            const auto inner_sys = detail::jacobi_sweeps(0.5 * (restricted + adjoint(restricted)));
            const ComplexMatrix rotated = basis * inner_sys.vectors;
            for (std::size_t j = 0; j < m; ++j) {
                vectors.set_col(start + j, rotated.col(j));
            }
        }
        start = end;
    }

    NormalEigenSystem out;
    out.values.resize(n);
    const ComplexMatrix bv = b * vectors;
    for (std::size_t j = 0; j < n; ++j) {
        Complex q{};
        for (std::size_t i = 0; i < n; ++i) {
            q += std::conj(vectors(i, j)) * bv(i, j);
        }
        out.values[j] = q;
    }
    out.vectors = std::move(vectors);
    return out;
}

} // namespace normfac
