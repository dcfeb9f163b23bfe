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
#include <numeric>
#include <utility>
#include <vector>

#include "normfac/eigen.hpp"
#include "normfac/factorization.hpp"
#include "normfac/idempotent.hpp"

namespace normfac {

/// Hermitian, trace one, no eigenvalue below -tol.cluster.
class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix m, const Tolerances &tol = {}) : matrix_(std::move(m)) {
        if (!matrix_.is_square()) {
            throw Error(ErrorCode::NotDensity, "density matrix must be square, got " + matrix_.shape());
        }
        if (frobenius_distance(matrix_, adjoint(matrix_)) > tol.structural) {
            throw Error(ErrorCode::NotDensity, "density matrix is not Hermitian");
        }
        const Complex tr = trace(matrix_);
        if (std::abs(tr - 1.0) > tol.structural) {
            throw Error(ErrorCode::NotDensity,
                        "trace is " + std::to_string(tr.real()) + ", expected 1");
        }
        const auto sys = hermitian_eigen(matrix_, tol);
        if (!sys.values.empty() && sys.values.front() < -tol.cluster) {
            throw Error(ErrorCode::NotDensity, "negative eigenvalue " +
                                                   std::to_string(sys.values.front()));
        }
    }

    const ComplexMatrix &matrix() const noexcept { return matrix_; }
    std::size_t size() const noexcept { return matrix_.rows(); }

  private:
    ComplexMatrix matrix_;
};

struct EnsembleMember {
    double weight;
    ColumnVector state;
};

/// sum_i p_i u_i u_i^*. The u_i need not be orthogonal. Weights must lie in
/// (0, 1] and sum to 1 within tol.cluster; they are rescaled to sum exactly to 1.
inline DensityMatrix density_from_ensemble(const std::vector<EnsembleMember> &ensemble,
                                           const Tolerances &tol = {}) {
    if (ensemble.empty()) {
        throw Error(ErrorCode::WeightsInvalid, "empty ensemble");
    }
    const std::size_t n = ensemble.front().state.size();
    double total = 0.0;
    for (const auto &member : ensemble) {
        if (!(member.weight > 0.0 && member.weight <= 1.0)) {
            throw Error(ErrorCode::WeightsInvalid,
                        "weight " + std::to_string(member.weight) + " outside (0, 1]");
        }
        if (member.state.size() != n) {
            throw Error(ErrorCode::DimensionMismatch, "ensemble states differ in dimension");
        }
        if (std::abs(norm2(member.state) - 1.0) > tol.structural) {
            throw Error(ErrorCode::NotUnit, "state norm is " + std::to_string(norm2(member.state)));
        }
        total += member.weight;
    }
    if (std::abs(total - 1.0) > tol.cluster) {
        throw Error(ErrorCode::WeightsInvalid, "weights sum to " + std::to_string(total));
    }
    ComplexMatrix rho = ComplexMatrix::zeros(n, n);
    for (const auto &member : ensemble) {
        rho += (member.weight / total) * outer(member.state);
    }
    return DensityMatrix(std::move(rho), tol);
}

/// rho = sum_j p_j F_j with distinct p_j (descending) and each F_j split into
/// its st-ordered rank-1 parts.
struct DensityCanonicalForm {
    std::size_t size = 0;
    std::vector<double> weights;
    std::vector<SymmetricIdempotent> projectors;
    std::vector<PureDecomposition> blocks;
    /// Kernel projector.
    SymmetricIdempotent residual = SymmetricIdempotent::zero(0);

    ComplexMatrix reconstruct() const {
        ComplexMatrix out = ComplexMatrix::zeros(size, size);
        for (std::size_t j = 0; j < weights.size(); ++j) {
            out += weights[j] * blocks[j].sum(size);
        }
        return out;
    }

    /// sum_j p_j rank(F_j); equals trace(rho) = 1.
    double weight_rank_sum() const {
        double s = 0.0;
        for (std::size_t j = 0; j < weights.size(); ++j) {
            s += weights[j] * static_cast<double>(projectors[j].rank());
        }
        return s;
    }
};

inline DensityCanonicalForm canonical_density(const DensityMatrix &rho, const Tolerances &tol = {}) {
    const auto f = factor_normal(rho.matrix(), tol);
    DensityCanonicalForm form;
    form.size = rho.size();
    form.residual = f.kernel();

    std::vector<std::pair<double, SymmetricIdempotent>> levels;
    for (const auto &factor : f.factors) {
        const double p = factor.eigenvalue.real();
        if (p < 0.0) {
            throw Error(ErrorCode::NotDensity, "negative eigenvalue " + std::to_string(p));
        }
        if (p > 0.0) {
            levels.emplace_back(p, factor.idempotent);
        }
    }
    // A pure state's weight 1 sits in the eigenvalue-1 residual.
    if (!f.residual.is_zero()) {
        levels.emplace_back(1.0, f.residual);
    }
    std::stable_sort(levels.begin(), levels.end(),
                     [](const auto &a, const auto &b) { return a.first > b.first; });
    for (auto &[p, projector] : levels) {
        form.weights.push_back(p);
        form.blocks.push_back(decompose_pure(projector, tol));
        form.projectors.push_back(std::move(projector));
    }
    return form;
}

inline ComplexMatrix density_pseudo_inverse(const DensityMatrix &rho, const Tolerances &tol = {}) {
    return pseudo_inverse(factor_normal(rho.matrix(), tol));
}

struct DensityFormDistance {
    bool comparable = false;  // same number of weights, same block shapes and st indices
    double weight = 0.0;
    double block = 0.0;       // worst Frobenius distance between aligned rank-1 parts
};

inline DensityFormDistance density_form_distance(const DensityCanonicalForm &a,
                                                 const DensityCanonicalForm &b) {
    DensityFormDistance d;
    if (a.size != b.size || a.weights.size() != b.weights.size()) {
        return d;
    }
    for (std::size_t j = 0; j < a.weights.size(); ++j) {
        if (a.blocks[j].st_indices != b.blocks[j].st_indices) {
            return d;
        }
        d.weight = std::max(d.weight, std::abs(a.weights[j] - b.weights[j]));
        for (std::size_t k = 0; k < a.blocks[j].parts.size(); ++k) {
            d.block = std::max(d.block, frobenius_distance(a.blocks[j].parts[k].matrix(),
                                                           b.blocks[j].parts[k].matrix()));
        }
    }
    d.block = std::max(d.block, frobenius_distance(a.residual.matrix(), b.residual.matrix()));
    d.comparable = true;
    return d;
}

} // namespace normfac
