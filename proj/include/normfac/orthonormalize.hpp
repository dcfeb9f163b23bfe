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
#include <vector>

#include "normfac/matrix.hpp"
#include "normfac/tolerance.hpp"

namespace normfac {

/// Modified Gram-Schmidt with one re-orthogonalization pass.
///
/// A vector whose residual after projection is below
/// `tol.cluster * (largest input norm)` is treated as dependent and dropped.
inline std::vector<ColumnVector> orthonormalize(const std::vector<ColumnVector> &vectors,
                                                const Tolerances &tol = {}) {
    std::vector<ColumnVector> basis;
    if (vectors.empty()) {
        return basis;
    }
    const std::size_t dim = vectors.front().size();
    double largest = 0.0;
    for (const auto &v : vectors) {
        if (v.size() != dim) {
            throw Error(ErrorCode::DimensionMismatch, "orthonormalize: vectors differ in length");
        }
        largest = std::max(largest, norm2(v));
    }
    const double drop_below = tol.cluster * largest;

    for (const auto &v : vectors) {
        ColumnVector w = v;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &e : basis) {
                const Complex c = inner(e, w);
                for (std::size_t i = 0; i < dim; ++i) {
                    w[i] -= c * e[i];
                }
            }
        }
        const double len = norm2(w);
        if (len <= drop_below || len == 0.0) {
            continue;
        }
        for (auto &x : w) {
            x /= len;
        }
        basis.push_back(std::move(w));
    }
    return basis;
}

} // namespace normfac
