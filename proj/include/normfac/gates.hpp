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

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "normfac/factorization.hpp"

namespace normfac {

/// A catalogued gate: its matrix and its factorization written down by hand
/// (not computed by factor_normal).
struct GateSpec {
    std::string name;
    std::map<std::string, double> parameters;
    ComplexMatrix matrix;
    CanonicalFactorization published_factorization;
};

inline constexpr std::array<std::string_view, 12> kGateNames = {
    "hadamard", "pauli_x", "pauli_y", "pauli_z", "phase", "not",
    "sqrt_not", "swap",    "sqrt_swap", "cnot",  "bell",  "rotation"};

namespace detail {

inline constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

inline double require_parameter(const std::map<std::string, double> &params,
                                std::string_view gate, const std::string &key) {
    const auto it = params.find(key);
    if (it == params.end()) {
        throw Error(ErrorCode::MissingParameter,
                    std::string(gate) + " needs parameter '" + key + "'");
    }
    return it->second;
}

inline SymmetricIdempotent projector(ComplexMatrix m) { return SymmetricIdempotent(std::move(m)); }

// (1/2)[[1, -1], [-1, 1]]: the eigenvalue -1 projector of X.
inline ComplexMatrix x_minus_projector() { return {{0.5, -0.5}, {-0.5, 0.5}}; }

// Two-qubit projector with block (1/2)[[1, -1], [-1, 1]] at rows/cols (i, i+1).
inline ComplexMatrix block_projector_4(std::size_t i) {
    ComplexMatrix m = ComplexMatrix::zeros(4, 4);
    m(i, i) = 0.5;
    m(i, i + 1) = -0.5;
    m(i + 1, i) = -0.5;
    m(i + 1, i + 1) = 0.5;
    return m;
}

} // namespace detail

/// Look up a gate by name. `phase` and `rotation` read parameter "theta".
inline GateSpec gate(std::string_view name, const std::map<std::string, double> &params = {}) {
    using detail::kInvSqrt2;
    using detail::projector;
    const Complex i = kI;
    GateSpec g;
    g.name = std::string(name);

    std::vector<BasicFactor> factors;
    std::size_t n = 2;
    if (name == "hadamard") {
        g.matrix = {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
        factors.push_back({projector({{0.5 * (1.0 - kInvSqrt2), -0.5 * kInvSqrt2},
                                      {-0.5 * kInvSqrt2, 0.5 * (1.0 + kInvSqrt2)}}),
                           -1.0});
    } else if (name == "pauli_x" || name == "not") {
        g.matrix = {{0.0, 1.0}, {1.0, 0.0}};
        factors.push_back({projector(detail::x_minus_projector()), -1.0});
    } else if (name == "sqrt_not") {
        g.matrix = {{0.5 * (1.0 + i), 0.5 * (1.0 - i)}, {0.5 * (1.0 - i), 0.5 * (1.0 + i)}};
        factors.push_back({projector(detail::x_minus_projector()), i});
    } else if (name == "pauli_y") {
        g.matrix = {{0.0, -i}, {i, 0.0}};
        factors.push_back({projector({{0.5, 0.5 * i}, {-0.5 * i, 0.5}}), -1.0});
    } else if (name == "pauli_z") {
        g.matrix = {{1.0, 0.0}, {0.0, -1.0}};
        factors.push_back({projector({{0.0, 0.0}, {0.0, 1.0}}), -1.0});
    } else if (name == "phase") {
        const double theta = detail::require_parameter(params, name, "theta");
        g.parameters["theta"] = theta;
        const Complex phase = std::polar(1.0, theta);
        g.matrix = {{1.0, 0.0}, {0.0, phase}};
        factors.push_back({projector({{0.0, 0.0}, {0.0, 1.0}}), phase});
    } else if (name == "rotation") {
        const double theta = detail::require_parameter(params, name, "theta");
        g.parameters["theta"] = theta;
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        g.matrix = {{c, s}, {-s, c}};
        factors.push_back({projector({{0.5, -0.5 * i}, {0.5 * i, 0.5}}), std::polar(1.0, theta)});
        factors.push_back({projector({{0.5, 0.5 * i}, {-0.5 * i, 0.5}}), std::polar(1.0, -theta)});
    } else if (name == "bell") {
        g.matrix = {{0.0, 1.0}, {-1.0, 0.0}};
        factors.push_back({projector({{0.5, 0.5 * i}, {-0.5 * i, 0.5}}), -i});
        factors.push_back({projector({{0.5, -0.5 * i}, {0.5 * i, 0.5}}), i});
    } else if (name == "swap" || name == "sqrt_swap") {
        n = 4;
        g.matrix = ComplexMatrix::identity(4);
        g.matrix(1, 1) = 0.0;
        g.matrix(2, 2) = 0.0;
        g.matrix(1, 2) = 1.0;
        g.matrix(2, 1) = 1.0;
        Complex alpha = -1.0;
        if (name == "sqrt_swap") {
            g.matrix(1, 1) = g.matrix(2, 2) = 0.5 * (1.0 + i);
            g.matrix(1, 2) = g.matrix(2, 1) = 0.5 * (1.0 - i);
            alpha = i;
        }
        factors.push_back({projector(detail::block_projector_4(1)), alpha});
    } else if (name == "cnot") {
        n = 4;
        g.matrix = ComplexMatrix::identity(4);
        g.matrix(2, 2) = 0.0;
        g.matrix(3, 3) = 0.0;
        g.matrix(2, 3) = 1.0;
        g.matrix(3, 2) = 1.0;
        factors.push_back({projector(detail::block_projector_4(2)), -1.0});
    } else {
        throw Error(ErrorCode::UnknownGate, "no gate named '" + std::string(name) + "'");
    }
    g.published_factorization = from_factors(n, std::move(factors));
    return g;
}

} // namespace normfac
