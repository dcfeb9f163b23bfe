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
#include <numbers>
#include <vector>

#include "normfac/factorization.hpp"
#include "normfac/idempotent.hpp"

namespace normfac {

/// Orthonormal vectors in C^dim (possibly fewer than dim) with one eigenvalue each.
struct Frame {
    std::size_t dim = 0;
    std::vector<ColumnVector> vectors;
    std::vector<Complex> alphas;
};

/// prod_i (I - u_i u_i^* + alpha_i u_i u_i^*) in canonical form; equal alphas
/// are merged and alpha = 1 goes to the residual.
inline CanonicalFactorization build_from_frame(const Frame &frame, const Tolerances &tol = {}) {
    if (frame.vectors.size() != frame.alphas.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    std::to_string(frame.vectors.size()) + " vectors but " +
                        std::to_string(frame.alphas.size()) + " eigenvalues");
    }
    if (frame.vectors.size() > frame.dim) {
        throw Error(ErrorCode::NotOrthonormal, "more vectors than dimensions");
    }
    for (std::size_t a = 0; a < frame.vectors.size(); ++a) {
        const auto &u = frame.vectors[a];
        if (u.size() != frame.dim) {
            throw Error(ErrorCode::LengthMismatch,
                        "vector " + std::to_string(a) + " is not in C^" + std::to_string(frame.dim));
        }
        if (std::abs(norm2(u) - 1.0) > tol.structural) {
            throw Error(ErrorCode::NotOrthonormal, "vector " + std::to_string(a) + " is not unit");
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (std::abs(inner(frame.vectors[b], u)) > tol.structural) {
                throw Error(ErrorCode::NotOrthonormal, "vectors " + std::to_string(b) + " and " +
                                                           std::to_string(a) +
                                                           " are not orthogonal");
            }
        }
    }
    std::vector<BasicFactor> factors;
    for (std::size_t a = 0; a < frame.vectors.size(); ++a) {
        factors.push_back({SymmetricIdempotent(outer(frame.vectors[a]), tol), frame.alphas[a]});
    }
    return from_factors(frame.dim, std::move(factors), tol);
}

/// prod_j (I - E_j + e^{2 pi i r_j / order} E_j): a normal order-th root of I.
/// Each exponent must lie in [1, order - 1].
inline CanonicalFactorization build_identity_root(const OrthogonalFamily &family,
                                                  const std::vector<unsigned> &exponents,
                                                  unsigned order, const Tolerances &tol = {}) {
    if (exponents.size() != family.members.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    std::to_string(exponents.size()) + " exponents for " +
                        std::to_string(family.members.size()) + " projectors");
    }
    std::vector<BasicFactor> factors;
    for (std::size_t j = 0; j < exponents.size(); ++j) {
        const unsigned r = exponents[j];
        if (r < 1 || r >= order) {
            throw Error(ErrorCode::ExponentOutOfRange,
                        "exponent " + std::to_string(r) + " outside [1, " +
                            std::to_string(order == 0 ? 0 : order - 1) + "]");
        }
        factors.push_back({family.members[j],
                           std::polar(1.0, 2.0 * std::numbers::pi * r / static_cast<double>(order))});
    }
    return from_factors(family.n, std::move(factors), tol);
}

} // namespace normfac
