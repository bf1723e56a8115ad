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

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qcool/types.hpp"

namespace qcool {

namespace pauli {
/// sigma^z = diag(+1, -1); |1> is the ground state of (omega/2) sigma^z.
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// |1><1|
ComplexMatrix ground_projector();
} // namespace pauli

/// Kronecker product, `a` as the left (lower site index) factor.
/// Throws CapacityError when either result dimension exceeds kMaxDimension.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// I x ... x op x ... x I with the 2x2 `op` in slot `site`.
ComplexMatrix embed_single_site(const ComplexMatrix& op, SiteIndex site, int num_sites);

/// Spectral decomposition of a Hermitian generator, reusable for any t.
class SpectralPropagator {
public:
    /// Throws ValidationError when `h` is not Hermitian within 1e-10.
    explicit SpectralPropagator(const ComplexMatrix& h);

    /// exp(-i h t)
    ComplexMatrix at(double t) const;

    const Eigen::VectorXd& energies() const noexcept { return energies_; }
    const ComplexMatrix& eigenvectors() const noexcept { return eigenvectors_; }

private:
    Eigen::VectorXd energies_;
    ComplexMatrix eigenvectors_;
};

/// exp(-i h t) by spectral decomposition.
ComplexMatrix hermitian_evolution(const ComplexMatrix& h, double t);

/// Reduced operator on `keep` (any order, duplicates rejected), returned in
/// ascending site order. Works on any square 2^L operator.
ComplexMatrix partial_trace(const ComplexMatrix& rho, int num_sites,
                            std::span<const SiteIndex> keep);
DensityOperator partial_trace(const DensityOperator& rho, std::span<const SiteIndex> keep);

/// Partial transpose of a two-qubit operator on `transposed_site` (1 or 2).
ComplexMatrix partial_transpose(const ComplexMatrix& rho, SiteIndex transposed_site);
ComplexMatrix partial_transpose(const DensityOperator& rho, SiteIndex transposed_site);

struct ProjectionResult {
    DensityOperator state;
    double probability;
};

/// (Pi rho Pi / p, p) with p = Tr[Pi rho Pi].
/// Throws ValidationError for a non-projector and ZeroBranchError when p <= 1e-14.
ProjectionResult project_and_weight(const DensityOperator& rho, const ComplexMatrix& projector);

} // namespace qcool
