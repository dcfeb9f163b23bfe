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

// Split a rank-2 projector into its unique st-ordered rank-1 parts.

#include <cstdio>

#include "normfac/normfac.hpp"

int main() {
    using namespace normfac;
    const ComplexMatrix m = (1.0 / 3.0) * ComplexMatrix{{2.0, -1.0, 1.0}, {-1.0, 2.0, 1.0}, {1.0, 1.0, 2.0}};
    const SymmetricIdempotent e(m);
    const auto parts = decompose_pure(e);

    std::printf("rank %zu, %zu parts\n", e.rank(), parts.size());
    for (std::size_t k = 0; k < parts.size(); ++k) {
        std::printf("part %zu (st %zu):\n%s", k, parts.st_indices[k],
                    io::format_matrix(parts.parts[k].matrix()).c_str());
    }
    return 0;
}
