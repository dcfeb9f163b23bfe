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

// Factor the Hadamard gate, then take every square root of it.

#include <cstdio>

#include "normfac/normfac.hpp"

int main() {
    using namespace normfac;
    const auto h = gate("hadamard");
    const auto f = factor_normal(h.matrix);

    for (const auto &factor : f.factors) {
        std::printf("eigenvalue %s, rank %zu\n", io::format_complex(factor.eigenvalue).c_str(),
                    factor.idempotent.rank());
    }
    std::printf("matches the hand-written factorization: %s\n",
                canonical_equal(f, h.published_factorization) ? "yes" : "no");

    for (const auto &r : all_nth_roots(f, 2)) {
        const ComplexMatrix root = reconstruct(r.root);
        std::printf("root (branch %u, residual %u): |R^2 - H| = %.3g\n",
                    r.selector.branch_indices.at(0), r.selector.residual_index,
                    frobenius_distance(root * root, h.matrix));
    }
    return 0;
}
