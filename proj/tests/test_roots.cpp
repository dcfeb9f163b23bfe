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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "normfac/roots.hpp"
#include "support/random.hpp"

namespace normfac {
namespace {

using testing::Random;
using testing::SpectrumKind;

constexpr double kPi = std::numbers::pi;

const ComplexMatrix kX{{0, 1}, {1, 0}};

ComplexMatrix cnot() {
    ComplexMatrix m = ComplexMatrix::identity(4);
    m(2, 2) = m(3, 3) = 0.0;
    m(2, 3) = m(3, 2) = 1.0;
    return m;
}

ComplexMatrix swap_gate() {
    ComplexMatrix m = ComplexMatrix::identity(4);
    m(1, 1) = m(2, 2) = 0.0;
    m(1, 2) = m(2, 1) = 1.0;
    return m;
}

ErrorCode code_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    return ErrorCode::NonFinite;
}

TEST(NthRoot, PrincipalSquareRootOfNot) {
    const auto f = factor_normal(kX);
    const auto r = nth_root(f, 2, {{0}, 0});
    const ComplexMatrix expected = 0.5 * ComplexMatrix{{1.0 + kI, 1.0 - kI}, {1.0 - kI, 1.0 + kI}};
    EXPECT_LE(max_abs_difference(reconstruct(r), expected), 1e-12);
}

TEST(NthRoot, PrincipalSquareRootOfSwap) {
    const auto r = nth_root(factor_normal(swap_gate()), 2, {{0}, 0});
    ComplexMatrix expected = ComplexMatrix::identity(4);
    expected(1, 1) = expected(2, 2) = 0.5 * (1.0 + kI);
    expected(1, 2) = expected(2, 1) = 0.5 * (1.0 - kI);
    EXPECT_LE(max_abs_difference(reconstruct(r), expected), 1e-12);
}

TEST(NthRoot, FirstRootIsTheSame) {
    Random rng(41);
    const auto k = testing::known_normal(rng, 6, 4, SpectrumKind::General, true, true);
    const auto f = factor_normal(k.matrix);
    EXPECT_TRUE(canonical_equal(nth_root(f, 1, {std::vector<unsigned>(f.factors.size(), 0), 0}), f));
}

TEST(NthRoot, SelectorErrors) {
    const auto f = factor_normal(kX);
    EXPECT_EQ(code_of([&] { nth_root(f, 2, {{}, 0}); }), ErrorCode::SelectorMismatch);
    EXPECT_EQ(code_of([&] { nth_root(f, 2, {{2}, 0}); }), ErrorCode::SelectorMismatch);
    EXPECT_EQ(code_of([&] { nth_root(f, 2, {{0}, 2}); }), ErrorCode::SelectorMismatch);
    const auto full = factor_normal(ComplexMatrix{{0, -kI}, {kI, 0}} * kI);  // eigenvalues +-i, no residual
    ASSERT_TRUE(full.residual.is_zero());
    EXPECT_EQ(code_of([&] { nth_root(full, 2, {{0, 0}, 1}); }), ErrorCode::SelectorMismatch);
}

TEST(NthRoot, ZeroEigenvalueHasOneBranch) {
    const std::vector<Complex> d{0.0, 4.0};
    const auto f = factor_normal(ComplexMatrix::diagonal(d));
    ASSERT_EQ(f.factors.size(), 2u);
    ASSERT_EQ(f.factors[0].eigenvalue, Complex(0.0));
    EXPECT_EQ(code_of([&] { nth_root(f, 2, {{1, 0}, 0}); }), ErrorCode::ZeroBranch);
    const auto r = nth_root(f, 2, {{0, 1}, 0});
    const std::vector<Complex> expected{0.0, -2.0};
    EXPECT_LE(max_abs_difference(reconstruct(r), ComplexMatrix::diagonal(expected)), 1e-14);
}

TEST(AllRoots, PauliXHasFour) {
    const auto f = factor_normal(kX);
    const auto roots = all_nth_roots(f, 2);
    ASSERT_EQ(roots.size(), 4u);
    const ComplexMatrix e{{0.5, -0.5}, {-0.5, 0.5}};
    const ComplexMatrix ff{{0.5, 0.5}, {0.5, 0.5}};
    // (I - E + e^{i r pi/2} E)(I - F + e^{i s pi} F), r in {1, 3}, s in {0, 1}.
    std::vector<ComplexMatrix> expected;
    for (int r : {1, 3}) {
        for (int s : {0, 1}) {
            expected.push_back(std::polar(1.0, r * kPi / 2) * e + std::polar(1.0, s * kPi) * ff);
        }
    }
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_LE(max_abs_difference(reconstruct(roots[k].root), expected[k]), 1e-12) << "root " << k;
    }
}

TEST(AllRoots, CnotMatchesTheListedRoots) {
    const auto roots = all_nth_roots(factor_normal(cnot()), 2);
    ASSERT_EQ(roots.size(), 4u);
    ComplexMatrix e = ComplexMatrix::zeros(4, 4);
    e(2, 2) = e(3, 3) = 0.5;
    e(2, 3) = e(3, 2) = -0.5;
    const ComplexMatrix f = ComplexMatrix::identity(4) - e;
    const std::vector<ComplexMatrix> expected{f + kI * e, -1.0 * f + kI * e, f - kI * e, -1.0 * f - kI * e};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_LE(max_abs_difference(reconstruct(roots[k].root), expected[k]), 1e-12) << "root " << k;
    }
}

TEST(AllRoots, IdentityHasResidualBranchesOnly) {
    const auto roots = all_nth_roots(factor_normal(ComplexMatrix::identity(2)), 2);
    ASSERT_EQ(roots.size(), 2u);
    EXPECT_EQ(reconstruct(roots[0].root), ComplexMatrix::identity(2));
    EXPECT_LE(max_abs_difference(reconstruct(roots[1].root), -1.0 * ComplexMatrix::identity(2)), 1e-15);
}

TEST(AllRoots, CapIsEnforcedWithoutEnumerating) {
    const auto f = factor_normal(cnot());
    try {
        all_nth_roots(f, 100, 50);
        FAIL();
    } catch (const TooManyRootsError &e) {
        EXPECT_EQ(e.code(), ErrorCode::TooManyRoots);
        EXPECT_EQ(e.count, 10000u);
        EXPECT_FALSE(e.saturated);
    }
}

TEST(AllRoots, CountSaturates) {
    Random rng(42);
    const auto k = testing::known_normal(rng, 12, 12, SpectrumKind::UnitCircle);
    const auto c = count_nth_roots(factor_normal(k.matrix), 1u << 20);
    EXPECT_TRUE(c.saturated);
}

// n^k roots without a residual, n^(k+1) with one; every root is sound and all
// are distinct.
TEST(AllRoots, CountsAndSoundnessOnRandomFactorizations) {
    Random rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = rng.index(2, 6);
        const std::size_t k = rng.index(1, std::min<std::size_t>(n, 3));
        const bool residual = k < n && rng.coin();
        const auto kind = trial % 2 == 0 ? SpectrumKind::UnitCircle : SpectrumKind::General;
        auto t = testing::known_normal(rng, n, k + (residual ? 1 : 0), kind, false, residual);
        const auto f = factor_normal(t.matrix);
        ASSERT_EQ(f.factors.size(), k);
        ASSERT_EQ(!f.residual.is_zero(), residual);
        const unsigned order = static_cast<unsigned>(rng.index(2, 3));
        const auto roots = all_nth_roots(f, order);
        std::size_t expected = 1;
        for (std::size_t j = 0; j < k + (residual ? 1 : 0); ++j) {
            expected *= order;
        }
        ASSERT_EQ(roots.size(), expected);
        const double tol = 1e-7 * std::max(1.0, frobenius_norm(t.matrix));
        for (std::size_t a = 0; a < roots.size(); ++a) {
            const auto r = reconstruct(roots[a].root);
            EXPECT_LE(frobenius_distance(matrix_power(r, order), t.matrix), tol);
            EXPECT_TRUE(canonical_equal(power(roots[a].root, order), f));
            for (std::size_t b = 0; b < a; ++b) {
                EXPECT_FALSE(canonical_equal(roots[a].root, roots[b].root));
            }
        }
    }
}

TEST(AllRoots, SelectorsAreLexicographic) {
    const auto roots = all_nth_roots(factor_normal(cnot()), 3);
    ASSERT_EQ(roots.size(), 9u);
    std::set<std::pair<unsigned, unsigned>> seen;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const auto &sel = roots[k].selector;
        EXPECT_EQ(sel.branch_indices.at(0), k / 3);
        EXPECT_EQ(sel.residual_index, k % 3);
        seen.insert({sel.branch_indices[0], sel.residual_index});
    }
    EXPECT_EQ(seen.size(), 9u);
}

} // namespace
} // namespace normfac
