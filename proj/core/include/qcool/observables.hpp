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

#include <cstddef>
#include <optional>
#include <vector>

#include "qcool/protocol.hpp"
#include "qcool/types.hpp"

namespace qcool {

inline constexpr double kDefaultCoolingThreshold = 0.99;
inline constexpr double kDegeneracyTolerance = 1e-8;

/// <1| rho |1> of a one-qubit state.
double ground_fidelity(const DensityOperator& qubit_state);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double state_fidelity(const DensityOperator& a, const DensityOperator& b);

/// log2 || rho^{T_2} ||_1 of a two-qubit state, clamped at 0.
double log_negativity(const DensityOperator& two_qubit_state);

/// Site paired with every other unmeasured site: r - 1, or r + 1 when r = 1.
SiteIndex nodal_site(SiteIndex measured_site);

/// Sum over unmeasured i != nodal of E(rho_{nodal, i}); throws ArgumentError for L < 3.
double entanglement_distribution(const DensityOperator& state, SiteIndex measured_site);
double entanglement_distribution(const ComplexMatrix& state, int num_sites,
                                 SiteIndex measured_site);

struct CooledReport {
    double threshold = kDefaultCoolingThreshold;
    std::vector<SiteIndex> cooled_sites;
    /// Indexed by site - 1; first round with F >= threshold, nullopt otherwise
    /// (always nullopt at the measured site).
    std::vector<std::optional<std::size_t>> rounds_to_cool;

    bool is_cooled(SiteIndex site) const;
    bool all_cooled() const;
    /// Largest first-crossing round over unmeasured sites when all are cooled.
    std::optional<std::size_t> all_cooled_round() const;
};

/// Threshold must lie in (0.5, 1]; throws ArgumentError otherwise.
CooledReport cooled_sites(const ProtocolTrace& trace, double threshold = kDefaultCoolingThreshold);

struct SpectralPurificationReport {
    double top_eigenvalue_modulus = 0.0;
    /// |lambda_1| - |lambda_2| over the spectrum sorted by modulus.
    double spectral_gap = 0.0;
    /// Number of eigenvalues within 1e-8 of the top modulus.
    std::size_t subspace_dimension = 0;
    DensityOperator predicted_state;
    bool degenerate = false;
};

/// Large-N prediction of the post-selected state from the maximum-modulus
/// invariant subspace of the conditional map.
///
/// The subspace collects every eigenvalue within 1e-8 of the top modulus. Its
/// spectral projector is built from matched right and left eigenvectors; the
/// prediction is (M_S)^rounds rho (M_S^dag)^rounds, normalized, where M_S is
/// the map restricted to that subspace. With rounds = 0 it is the bare
/// projection of `initial`. When the subspace is numerically defective the
/// report is flagged degenerate and the state is projected orthogonally
/// onto the span of the top eigenvectors instead.
SpectralPurificationReport dominant_conditional_eigenstate(const ConditionalMap& map,
                                                           const DensityOperator& initial,
                                                           std::size_t rounds = 0);

} // namespace qcool
