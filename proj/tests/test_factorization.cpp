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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "normfac/factorization.hpp"
#include "normfac/roots.hpp"
#include "support/random.hpp"

namespace normfac {
namespace {

using testing::Random;
using testing::SpectrumKind;

constexpr double kPi = std::numbers::pi;
const double kInvRoot2 = 1.0 / std::numbers::sqrt2;

const ComplexMatrix kX{{0, 1}, {1, 0}};
const ComplexMatrix kZ{{1, 0}, {0, -1}};

ComplexMatrix rotation(double theta) {
    return {{std::cos(theta), std::sin(theta)}, {-std::sin(theta), std::cos(theta)}};
}

double scale_of(const ComplexMatrix &a) { return std::max(1.0, frobenius_norm(a)); }

TEST(FactorNormal, PauliX) {
    const auto f = factor_normal(kX);
    ASSERT_EQ(f.factors.size(), 1u);
    EXPECT_EQ(f.factors[0].eigenvalue, Complex(-1.0));
    EXPECT_LE(max_abs_difference(f.factors[0].idempotent.matrix(), ComplexMatrix{{0.5, -0.5}, {-0.5, 0.5}}), 1e-14);
    EXPECT_LE(max_abs_difference(f.residual.matrix(), ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}), 1e-14);
    EXPECT_EQ(f.residual.rank(), 1u);
}

TEST(FactorNormal, RotationByPiOverFour) {
    const auto f = factor_normal(rotation(kPi / 4));
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_TRUE(f.residual.is_zero());
    // Canonical order is by argument: pi/4 before 7pi/4.
    EXPECT_LE(std::abs(f.factors[0].eigenvalue - std::polar(1.0, kPi / 4)), 1e-14);
    EXPECT_LE(std::abs(f.factors[1].eigenvalue - std::polar(1.0, -kPi / 4)), 1e-14);
    EXPECT_LE(max_abs_difference(f.factors[0].idempotent.matrix(), ComplexMatrix{{0.5, -0.5 * kI}, {0.5 * kI, 0.5}}), 1e-14);
    EXPECT_LE(max_abs_difference(f.factors[1].idempotent.matrix(), ComplexMatrix{{0.5, 0.5 * kI}, {-0.5 * kI, 0.5}}), 1e-14);
}

TEST(FactorNormal, DiagonalClustering) {
    const std::vector<Complex> d{2.0, 2.0, 3.0};
    const auto f = factor_normal(ComplexMatrix::diagonal(d));
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0].eigenvalue, Complex(2.0));
    EXPECT_EQ(f.factors[1].eigenvalue, Complex(3.0));
    const std::vector<Complex> d0{1.0, 1.0, 0.0};
    const std::vector<Complex> d1{0.0, 0.0, 1.0};
    EXPECT_LE(max_abs_difference(f.factors[0].idempotent.matrix(), ComplexMatrix::diagonal(d0)), 1e-15);
    EXPECT_LE(max_abs_difference(f.factors[1].idempotent.matrix(), ComplexMatrix::diagonal(d1)), 1e-15);
    EXPECT_TRUE(f.residual.is_zero());
}

TEST(FactorNormal, RejectsNonNormal) {
    try {
        factor_normal(ComplexMatrix{{1, 1}, {0, 1}});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotNormal);
    }
}

TEST(FactorNormal, IdentityHasOnlyTheResidual) {
    const auto f = factor_normal(ComplexMatrix::identity(3));
    EXPECT_TRUE(f.factors.empty());
    EXPECT_EQ(f.residual.rank(), 3u);
    EXPECT_EQ(reconstruct(f), ComplexMatrix::identity(3));
}

TEST(Reconstruct, Hadamard) {
    const ComplexMatrix h{{kInvRoot2, kInvRoot2}, {kInvRoot2, -kInvRoot2}};
    EXPECT_LE(frobenius_distance(reconstruct(factor_normal(h)), h), 1e-9);
}

TEST(Reconstruct, Cnot) {
    ComplexMatrix cnot = ComplexMatrix::identity(4);
    cnot(2, 2) = cnot(3, 3) = 0.0;
    cnot(2, 3) = cnot(3, 2) = 1.0;
    const auto f = factor_normal(cnot);
    EXPECT_LE(frobenius_distance(reconstruct(f), cnot), 1e-12);
    EXPECT_LE(frobenius_distance(product_form(f), cnot), 1e-12);
}

TEST(CanonicalEqual, Basics) {
    EXPECT_TRUE(canonical_equal(factor_normal(kX), factor_normal(kX)));
    EXPECT_FALSE(canonical_equal(factor_normal(kX), factor_normal(kZ)));
    EXPECT_TRUE(canonical_equal(factor_normal(ComplexMatrix::identity(2)), factor_normal(ComplexMatrix::identity(2))));
}

// Uniqueness: the eigensolver's column order must not matter.
TEST(CanonicalEqual, IndependentOfEigenvectorOrder) {
    Random rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.index(2, 10);
        const auto k = testing::known_normal(rng, n, rng.index(1, std::min<std::size_t>(n, 4)), SpectrumKind::General,
                                             rng.coin(0.3), rng.coin(0.3));
        const auto sys = normal_eigen(k.matrix);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng.engine());
        std::vector<Complex> values(n);
        ComplexMatrix vectors(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            values[j] = sys.values[perm[j]];
            // A random phase per eigenvector changes nothing either.
            auto column = sys.vectors.col(perm[j]);
            const Complex phase = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
            for (auto &x : column) {
                x *= phase;
            }
            vectors.set_col(j, column);
        }
        const auto hint = classify(k.matrix);
        const auto a = factor_spectrum(sys.values, sys.vectors, hint);
        const auto b = factor_spectrum(values, vectors, hint);
        EXPECT_TRUE(canonical_equal(a, b));
        EXPECT_TRUE(canonical_equal(a, factor_normal(k.matrix)));
    }
}

TEST(Power, SquareOfXIsIdentity) {
    const auto p = power(factor_normal(kX), 2);
    EXPECT_TRUE(p.factors.empty());
    EXPECT_EQ(p.residual.rank(), 2u);
}

TEST(Power, CubeOfRotationMergesFactors) {
    const auto r = rotation(kPi / 3);
    const auto p = power(factor_normal(r), 3);
    ASSERT_EQ(p.factors.size(), 1u);
    EXPECT_LE(std::abs(p.factors[0].eigenvalue + 1.0), 1e-12);
    EXPECT_EQ(p.factors[0].idempotent.rank(), 2u);
    EXPECT_LE(frobenius_distance(reconstruct(p), r * r * r), 1e-12);
}

TEST(Power, FirstPowerIsTheSame) {
    Random rng(32);
    const auto k = testing::known_normal(rng, 5, 3, SpectrumKind::General);
    const auto f = factor_normal(k.matrix);
    EXPECT_TRUE(canonical_equal(power(f, 1), f));
}

TEST(Power, MatchesRepeatedMultiplication) {
    Random rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = rng.index(2, 8);
        const auto k = testing::known_normal(rng, n, std::min<std::size_t>(n, 3), SpectrumKind::General, rng.coin(0.3));
        const unsigned m = static_cast<unsigned>(rng.index(1, 5));
        const auto direct = matrix_power(k.matrix, m);
        EXPECT_LE(frobenius_distance(reconstruct(power(factor_normal(k.matrix), m)), direct),
                  10.0 * m * 1e-10 * std::max(1.0, std::pow(frobenius_norm(k.matrix), m)));
    }
}

TEST(PseudoInverse, Diagonal) {
    const std::vector<Complex> d{2.0, 0.0};
    const std::vector<Complex> inv{0.5, 0.0};
    EXPECT_LE(max_abs_difference(pseudo_inverse(factor_normal(ComplexMatrix::diagonal(d))), ComplexMatrix::diagonal(inv)), 1e-15);
}

TEST(PseudoInverse, UnitaryGivesAdjoint) {
    Random rng(34);
    const auto u = rng.unitary(6);
    EXPECT_LE(frobenius_distance(pseudo_inverse(factor_normal(u)), adjoint(u)), 1e-9);
}

TEST(PseudoInverse, MoorePenroseOnRandomNormal) {
    Random rng(35);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = rng.index(2, 10);
        const auto k = testing::known_normal(rng, n, std::min<std::size_t>(n, 4), SpectrumKind::General, trial % 2 == 0);
        const auto &a = k.matrix;
        const auto x = pseudo_inverse(factor_normal(a));
        EXPECT_LE(frobenius_distance(a * x * a, a), 1e-9);
        EXPECT_LE(frobenius_distance(x * a * x, x), 1e-9);
        EXPECT_LE(frobenius_distance(adjoint(a * x), a * x), 1e-9);
        EXPECT_LE(frobenius_distance(adjoint(x * a), x * a), 1e-9);
    }
}

TEST(Laws, RoundTripActionAndMultiplicity) {
    Random rng(36);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = rng.index(2, 16);
        const auto kind = static_cast<SpectrumKind>(trial % 3);
        const std::size_t distinct = rng.index(1, std::min<std::size_t>(n, 6));
        const auto k = testing::known_normal(rng, n, distinct, kind, rng.coin(0.2), rng.coin(0.3));
        const auto &a = k.matrix;
        const auto f = factor_normal(a);
        EXPECT_LE(frobenius_distance(reconstruct(f), a), 1e-8 * scale_of(a));
        EXPECT_LE(frobenius_distance(product_form(f), a), 1e-8 * scale_of(a));

        std::size_t ranks = f.residual.rank();
        for (const auto &factor : f.factors) {
            const auto &e = factor.idempotent.matrix();
            EXPECT_LE(frobenius_distance(a * e, factor.eigenvalue * e), 1e-8 * scale_of(a));
            const auto expected = static_cast<std::size_t>(std::count_if(
                k.diagonal.begin(), k.diagonal.end(), [&](Complex z) { return std::abs(z - factor.eigenvalue) < 1e-6; }));
            EXPECT_EQ(factor.idempotent.rank(), expected);
            EXPECT_NE(factor.eigenvalue, Complex(1.0));
            ranks += factor.idempotent.rank();
        }
        EXPECT_EQ(ranks, n);
        EXPECT_LE(frobenius_distance(a * f.residual.matrix(), f.residual.matrix()), 1e-8 * scale_of(a));
        const auto ones = static_cast<std::size_t>(
            std::count_if(k.diagonal.begin(), k.diagonal.end(), [](Complex z) { return z == Complex(1.0); }));
        EXPECT_EQ(f.residual.rank(), ones);
    }
}

TEST(Laws, CanonicalOrderIsByArgumentThenModulus) {
    const std::vector<Complex> d{std::polar(2.0, 1.0), std::polar(0.5, 1.0), std::polar(1.0, 3.0), -2.0 * kI, 4.0};
    const auto f = factor_normal(ComplexMatrix::diagonal(d));
    ASSERT_EQ(f.factors.size(), 5u);
    EXPECT_EQ(f.factors[0].eigenvalue, Complex(4.0));
    EXPECT_LE(std::abs(f.factors[1].eigenvalue - d[1]), 1e-14);
    EXPECT_LE(std::abs(f.factors[2].eigenvalue - d[0]), 1e-14);
    EXPECT_LE(std::abs(f.factors[3].eigenvalue - d[2]), 1e-14);
    EXPECT_LE(std::abs(f.factors[4].eigenvalue - d[3]), 1e-14);
}

TEST(Laws, UnitaryClosure) {
    Random rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = rng.index(2, 8);
        const auto u = rng.unitary(n);
        std::vector<SymmetricIdempotent> parts;
        std::vector<BasicFactor> factors;
        for (std::size_t j = 0; j < n; ++j) {
            if (rng.coin()) {
                factors.push_back({SymmetricIdempotent(outer(u.col(j))), std::polar(1.0, rng.uniform(0.1, 6.0))});
            }
        }
        const auto f = from_factors(n, factors);
        EXPECT_TRUE(classify(reconstruct(f)).unitary);
    }
}

TEST(FromFactors, RejectsOverlappingProjectors) {
    const SymmetricIdempotent e(ComplexMatrix{{1, 0}, {0, 0}});
    EXPECT_THROW(from_factors(2, {{e, 2.0}, {e, 3.0}}), NotOrthogonalError);
}

TEST(FromFactors, MergesEqualEigenvaluesAndDropsOne) {
    const SymmetricIdempotent e0(ComplexMatrix{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    const SymmetricIdempotent e1(ComplexMatrix{{0, 0, 0}, {0, 1, 0}, {0, 0, 0}});
    const SymmetricIdempotent e2(ComplexMatrix{{0, 0, 0}, {0, 0, 0}, {0, 0, 1}});
    const auto f = from_factors(3, {{e0, 2.0}, {e1, 2.0}, {e2, 1.0}});
    ASSERT_EQ(f.factors.size(), 1u);
    EXPECT_EQ(f.factors[0].idempotent.rank(), 2u);
    EXPECT_EQ(f.residual.rank(), 1u);
}

TEST(BasicFactor, InverseAndMatrix) {
    const BasicFactor b{SymmetricIdempotent(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}), 2.0 * kI};
    EXPECT_TRUE(b.invertible());
    EXPECT_LE(frobenius_distance(b.matrix() * b.inverse().matrix(), ComplexMatrix::identity(2)), 1e-15);
    EXPECT_TRUE(classify(b.matrix()).normal);
    const BasicFactor z{b.idempotent, 0.0};
    EXPECT_FALSE(z.invertible());
}

TEST(Involution, Hadamard) {
    const ComplexMatrix h{{kInvRoot2, kInvRoot2}, {kInvRoot2, -kInvRoot2}};
    const auto e = involution_idempotent(h);
    const ComplexMatrix expected{{0.5 * (1 - kInvRoot2), -0.5 * kInvRoot2}, {-0.5 * kInvRoot2, 0.5 * (1 + kInvRoot2)}};
    EXPECT_LE(max_abs_difference(e.matrix(), expected), 1e-15);
    EXPECT_LE(max_abs_difference(ComplexMatrix::identity(2) - 2.0 * e.matrix(), h), 1e-15);
    EXPECT_EQ(e.rank(), 1u);
}

TEST(Involution, PauliXAndIdentity) {
    EXPECT_LE(max_abs_difference(involution_idempotent(kX).matrix(), ComplexMatrix{{0.5, -0.5}, {-0.5, 0.5}}), 1e-15);
    EXPECT_TRUE(involution_idempotent(ComplexMatrix::identity(3)).is_zero());
}

TEST(Involution, Rejects) {
    for (const auto &m : {rotation(0.3), ComplexMatrix{{1, 1}, {0, 1}}, ComplexMatrix(2, 3)}) {
        try {
            involution_idempotent(m);
            FAIL();
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::NotInvolution);
        }
    }
}

TEST(ScaledInvolution, UnnormalizedHadamard) {
    const auto s = scaled_involution_idempotent(ComplexMatrix{{1, 1}, {1, -1}});
    EXPECT_NEAR(s.scale, std::numbers::sqrt2, 1e-15);
    const ComplexMatrix expected{{0.5 * (1 - kInvRoot2), -0.5 * kInvRoot2}, {-0.5 * kInvRoot2, 0.5 * (1 + kInvRoot2)}};
    EXPECT_LE(max_abs_difference(s.idempotent.matrix(), expected), 1e-15);
}

TEST(ScaledInvolution, IdentityAndFourByFour) {
    const auto id = scaled_involution_idempotent(ComplexMatrix::identity(2));
    EXPECT_EQ(id.scale, 1.0);
    EXPECT_TRUE(id.idempotent.is_zero());

    const ComplexMatrix h4{{1, 1, 1, -1}, {1, 1, -1, 1}, {1, -1, 1, 1}, {-1, 1, 1, 1}};
    const auto s = scaled_involution_idempotent(h4);
    EXPECT_NEAR(s.scale, 2.0, 1e-15);
    const ComplexMatrix e = 0.25 * ComplexMatrix{{1, -1, -1, 1}, {-1, 1, 1, -1}, {-1, 1, 1, -1}, {1, -1, -1, 1}};
    EXPECT_LE(max_abs_difference(s.idempotent.matrix(), e), 1e-15);
    EXPECT_EQ(s.idempotent.rank(), 1u);
}

TEST(ScaledInvolution, Rejects) {
    for (const auto &m : {ComplexMatrix{{0, 1}, {-1, 0}}, ComplexMatrix{{1, 0}, {0, 2}}, ComplexMatrix::zeros(2, 2)}) {
        try {
            scaled_involution_idempotent(m);
            FAIL();
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::NotScaledInvolution);
        }
    }
}

TEST(PrincipalArgument, Range) {
    EXPECT_EQ(principal_argument(1.0), 0.0);
    EXPECT_NEAR(principal_argument(-kI), 1.5 * kPi, 1e-15);
    EXPECT_EQ(principal_argument(std::polar(1.0, -1e-9)), 0.0);
}

} // namespace
} // namespace normfac
