// Copyright 2026 The qcool Authors
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

#include "qcool/types.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qcool {

ZeroBranchError::ZeroBranchError(std::size_t round, double probability)
    : Error("post-selection probability " + std::to_string(probability) +
            (round > 0 ? " at round " + std::to_string(round) : std::string{}) +
            " is below the zero-branch threshold"),
      round_(round),
      probability_(probability) {}

void SiteIndex::check(int num_sites) const {
    if (value_ < 1 || value_ > num_sites) {
        throw IndexError("site " + std::to_string(value_) + " outside [1, " +
                         std::to_string(num_sites) + "]");
    }
}

int sites_for_dimension(Eigen::Index dim) {
    if (dim < 1 || (dim & (dim - 1)) != 0) {
        throw ArgumentError("dimension " + std::to_string(dim) + " is not a power of two");
    }
    int sites = 0;
    while ((Eigen::Index{1} << sites) < dim) ++sites;
    return sites;
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return INFINITY;
    return max_abs(m - m.adjoint());
}

double unitarity_defect(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) return INFINITY;
    return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

DensityOperator::DensityOperator(ComplexMatrix matrix, int num_sites)
    : matrix_(std::move(matrix)), num_sites_(num_sites) {
    if (num_sites_ < 1 || num_sites_ > kMaxSites) {
        throw CapacityError("density operator on " + std::to_string(num_sites_) +
                            " sites is outside [1, " + std::to_string(kMaxSites) + "]");
    }
    const Eigen::Index dim = Eigen::Index{1} << num_sites_;
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw ValidationError("density operator must be " + std::to_string(dim) + "x" +
                              std::to_string(dim));
    }
    if (!all_finite(matrix_)) throw ValidationError("density operator has non-finite entries");
    if (hermiticity_defect(matrix_) > tol::kHermitian) {
        throw ValidationError("density operator is not Hermitian");
    }
    const Complex tr = matrix_.trace();
    if (std::abs(tr.real() - 1.0) > tol::kTrace || std::abs(tr.imag()) > tol::kTrace) {
        throw ValidationError("density operator trace " + std::to_string(tr.real()) + " != 1");
    }
    if (eigenvalues().minCoeff() < -tol::kPositivity) {
        throw ValidationError("density operator has a negative eigenvalue");
    }
}

DensityOperator::DensityOperator(ComplexMatrix matrix)
    : DensityOperator(matrix, sites_for_dimension(matrix.rows())) {}

Eigen::VectorXd DensityOperator::eigenvalues() const {
    // Symmetrize so round-off asymmetry cannot leak into the solver.
    const ComplexMatrix h = 0.5 * (matrix_ + matrix_.adjoint());
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

PureState::PureState(ComplexVector amplitudes)
    : amplitudes_(std::move(amplitudes)), num_sites_(sites_for_dimension(amplitudes_.size())) {
    if (num_sites_ > kMaxSites) throw CapacityError("pure state exceeds the supported size");
    if (!amplitudes_.allFinite()) throw ValidationError("pure state has non-finite amplitudes");
    if (std::abs(amplitudes_.norm() - 1.0) > tol::kPureNorm) {
        throw ValidationError("pure state is not normalized");
    }
}

DensityOperator PureState::projector() const {
    return DensityOperator(amplitudes_ * amplitudes_.adjoint(), num_sites_);
}

} // namespace qcool
