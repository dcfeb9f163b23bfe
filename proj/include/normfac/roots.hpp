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
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "normfac/factorization.hpp"

namespace normfac {

/// Branch choice for an n-th root: one index per factor plus one for the residual.
struct RootSelector {
    std::vector<unsigned> branch_indices;
    unsigned residual_index = 0;

    friend bool operator==(const RootSelector &, const RootSelector &) = default;
};

/// F^m: every eigenvalue raised to m. Eigenvalues that land on 1 join the
/// residual and colliding powers merge their projectors.
inline CanonicalFactorization power(const CanonicalFactorization &f, unsigned m,
                                    const Tolerances &tol = {}) {
    if (m == 0) {
        throw std::invalid_argument("power exponent must be positive");
    }
    std::vector<BasicFactor> parts;
    parts.reserve(f.factors.size());
    for (const auto &factor : f.factors) {
        const Complex alpha = factor.eigenvalue;
        const Complex raised =
            alpha == Complex(0.0)
                ? Complex(0.0)
                : std::polar(std::pow(std::abs(alpha), static_cast<double>(m)),
                             static_cast<double>(m) * std::arg(alpha));
        parts.push_back({factor.idempotent, raised});
    }
    StructureReport hint = f.class_hint;
    hint.idempotent = false;
    auto out = detail::assemble(f.size, std::move(parts), hint, tol, /*validate=*/false);
    out.class_hint = detail::hint_from_spectrum(out.factors, tol);
    return out;
}

/// The n-th root picked by `sel`.
///
/// alpha = |alpha| e^{i theta}, theta in [0, 2pi), maps to
/// |alpha|^{1/n} e^{i (theta + 2 pi r) / n}. A nonzero residual F with branch r
/// becomes the factor (F, e^{2 pi i r / n}). Zero has only the root zero.
inline CanonicalFactorization nth_root(const CanonicalFactorization &f, unsigned n,
                                       const RootSelector &sel, const Tolerances &tol = {}) {
    if (n == 0) {
        throw std::invalid_argument("root order must be positive");
    }
    if (sel.branch_indices.size() != f.factors.size()) {
        throw Error(ErrorCode::SelectorMismatch,
                    "selector has " + std::to_string(sel.branch_indices.size()) +
                        " branch indices for " + std::to_string(f.factors.size()) + " factors");
    }
    for (auto r : sel.branch_indices) {
        if (r >= n) {
            throw Error(ErrorCode::SelectorMismatch,
                        "branch index " + std::to_string(r) + " outside [0, " +
                            std::to_string(n - 1) + "]");
        }
    }
    if (sel.residual_index >= n || (f.residual.is_zero() && sel.residual_index != 0)) {
        throw Error(ErrorCode::SelectorMismatch,
                    "residual index " + std::to_string(sel.residual_index) +
                        " is not allowed for this factorization");
    }

    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double order = static_cast<double>(n);
    std::vector<BasicFactor> parts;
    for (std::size_t j = 0; j < f.factors.size(); ++j) {
        const auto &factor = f.factors[j];
        const unsigned r = sel.branch_indices[j];
        if (factor.eigenvalue == Complex(0.0)) {
            if (r != 0) {
                throw Error(ErrorCode::ZeroBranch,
                            "eigenvalue 0 has a single n-th root; branch " + std::to_string(r) +
                                " requested");
            }
            parts.push_back(factor);
            continue;
        }
        const double theta = principal_argument(factor.eigenvalue, tol);
        const double modulus = std::pow(std::abs(factor.eigenvalue), 1.0 / order);
        parts.push_back(
            {factor.idempotent, std::polar(modulus, (theta + two_pi * r) / order)});
    }
    if (!f.residual.is_zero() && sel.residual_index != 0) {
        parts.push_back({f.residual, std::polar(1.0, two_pi * sel.residual_index / order)});
    }

    StructureReport hint;
    hint.normal = true;
    hint.unitary = f.class_hint.unitary;
    auto out = detail::assemble(f.size, std::move(parts), hint, tol, /*validate=*/false);
    out.class_hint = detail::hint_from_spectrum(out.factors, tol);
    return out;
}

struct RootCount {
    std::uint64_t count = 1;
    bool saturated = false;  // true when the count does not fit in 64 bits
};

/// Number of distinct n-th roots: n per nonzero eigenvalue (residual included
/// when nonzero), one for a zero eigenvalue.
inline RootCount count_nth_roots(const CanonicalFactorization &f, unsigned n) {
    RootCount c;
    auto multiply = [&](std::uint64_t k) {
        if (c.saturated) {
            return;
        }
        if (k != 0 && c.count > std::numeric_limits<std::uint64_t>::max() / k) {
            c.saturated = true;
            c.count = std::numeric_limits<std::uint64_t>::max();
            return;
        }
        c.count *= k;
    };
    for (const auto &factor : f.factors) {
        multiply(factor.eigenvalue == Complex(0.0) ? 1 : n);
    }
    if (!f.residual.is_zero()) {
        multiply(n);
    }
    return c;
}

struct NthRoot {
    RootSelector selector;
    CanonicalFactorization root;
};

inline constexpr std::uint64_t kDefaultMaxRoots = 4096;

/// Every n-th root, selectors in lexicographic order (first factor most
/// significant, residual index last). Throws TooManyRoots when the count
/// exceeds `cap`, without materializing anything.
inline std::vector<NthRoot> all_nth_roots(const CanonicalFactorization &f, unsigned n,
                                          std::uint64_t cap = kDefaultMaxRoots,
                                          const Tolerances &tol = {}) {
    if (n == 0) {
        throw std::invalid_argument("root order must be positive");
    }
    const auto count = count_nth_roots(f, n);
    if (count.saturated || count.count > cap) {
        throw TooManyRootsError(count.count, cap, count.saturated);
    }

    // Per-position branch limits; zero eigenvalues and a zero residual only admit 0.
    std::vector<unsigned> limits;
    for (const auto &factor : f.factors) {
        limits.push_back(factor.eigenvalue == Complex(0.0) ? 1U : n);
    }
    limits.push_back(f.residual.is_zero() ? 1U : n);

    std::vector<NthRoot> roots;
    roots.reserve(static_cast<std::size_t>(count.count));
    std::vector<unsigned> digits(limits.size(), 0);
    for (;;) {
        RootSelector sel;
        sel.branch_indices.assign(digits.begin(), digits.end() - 1);
        sel.residual_index = digits.back();
        roots.push_back({sel, nth_root(f, n, sel, tol)});

        std::size_t pos = digits.size();
        while (pos > 0) {
            --pos;
            if (++digits[pos] < limits[pos]) {
                break;
            }
            digits[pos] = 0;
            if (pos == 0) {
                return roots;
            }
        }
    }
}

} // namespace normfac
