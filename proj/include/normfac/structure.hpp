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

#include "normfac/matrix.hpp"
#include "normfac/tolerance.hpp"

namespace normfac {

struct StructureReport {
    bool normal = false;
    bool hermitian = false;
    bool unitary = false;
    bool symmetric_unitary = false;
    bool idempotent = false;

    friend bool operator==(const StructureReport &, const StructureReport &) = default;
};

inline StructureReport classify(const ComplexMatrix &a, const Tolerances &tol = {}) {
    if (!a.is_square()) {
        throw Error(ErrorCode::NonSquare, "classify needs a square matrix, got " + a.shape());
    }
    const double n = static_cast<double>(a.rows());
    const double norm = frobenius_norm(a);
    const auto a_star = adjoint(a);
    const auto a_a_star = a * a_star;

    StructureReport r;
    r.normal = frobenius_distance(a_a_star, a_star * a) <=
               tol.structural * std::max(1.0, norm * norm);
    r.hermitian = frobenius_distance(a, a_star) <= tol.structural * std::max(1.0, norm);
    r.unitary = frobenius_distance(a_a_star, ComplexMatrix::identity(a.rows())) <=
                tol.structural * std::sqrt(n);
    r.idempotent = frobenius_distance(a * a, a) <= tol.structural * std::max(1.0, norm);
    r.symmetric_unitary = r.hermitian && r.unitary;
    // The three tests use differently scaled thresholds; keep the implications exact.
    r.normal = r.normal || r.hermitian || r.unitary;
    return r;
}

} // namespace normfac
