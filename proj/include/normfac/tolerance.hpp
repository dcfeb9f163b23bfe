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

#include <stdexcept>
#include <string>

namespace normfac {

/// Two-level tolerance model.
///
/// `structural` bounds residuals of identities that hold exactly in theory
/// (A A^* = A^* A, E^2 = E, ...). `cluster` decides when two computed eigenvalues
/// are the same eigenvalue, and when a column counts as nonzero. Each check scales
/// these by the size of its data as documented at the call site.
struct Tolerances {
    double structural = 1e-10;
    double cluster = 1e-7;

    Tolerances() = default;

    Tolerances(double structural_tol, double cluster_tol)
        : structural(structural_tol), cluster(cluster_tol) {
        if (!(0.0 < structural && structural < cluster && cluster < 1.0)) {
            throw std::invalid_argument("tolerances must satisfy 0 < structural < cluster < 1, got " +
                                        std::to_string(structural) + ", " +
                                        std::to_string(cluster));
        }
    }
};

} // namespace normfac
