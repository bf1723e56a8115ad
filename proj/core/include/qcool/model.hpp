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
#include <string>
#include <vector>

#include "qcool/linalg.hpp"
#include "qcool/types.hpp"

namespace qcool {

/// Variable-range XY coupling J_ij = J / |i - j|^alpha with anisotropy gamma.
struct CouplingSpec {
    double J = 3.0;
    double alpha = 2.5;
    double gamma = 0.0;
};

/// Full physical specification of one refrigerator run.
struct ChainSpec {
    int num_sites = 8;
    std::vector<double> fields;  ///< omega_i, one per site
    CouplingSpec coupling;
    double beta = 0.0;           ///< inverse temperature of the unmeasured sites
    SiteIndex measured_site{1};
    double time_step = 1.0;
    std::size_t rounds = 500;

    /// Chain with every omega_i = omega and the remaining fields defaulted.
    static ChainSpec uniform(int num_sites, double omega = 1.0);

    /// Every invariant violation, one message each; empty when valid.
    std::vector<std::string> violations() const;
    /// Throws ValidationError listing all violations.
    void validate() const;
};

/// Local sum, interaction and H_ev = local_sum + interaction.
struct HamiltonianSet {
    ComplexMatrix local_sum;
    ComplexMatrix interaction;
    ComplexMatrix evolution;
};

/// J / |i - j|^alpha; throws ArgumentError when i == j.
double coupling_strength(const CouplingSpec& coupling, SiteIndex i, SiteIndex j);

/// sum_i (omega_i / 2) sigma^z_i
ComplexMatrix build_local_hamiltonians(const ChainSpec& spec);
/// Same sum for an explicit field list (any 1 <= L <= 10).
ComplexMatrix build_local_hamiltonians(const std::vector<double>& fields);

/// sum_{i<j} (J_ij / 4) [(1 + gamma) X_i X_j + (1 - gamma) Y_i Y_j], open chain, all pairs.
ComplexMatrix build_interaction_hamiltonian(const ChainSpec& spec);

HamiltonianSet build_evolution_hamiltonian(const ChainSpec& spec);

/// |1>, the ground state of (omega / 2) sigma^z; throws ArgumentError for omega <= 0.
PureState local_ground_state(double omega);

/// exp(-beta H) / Z for H = (omega / 2) sigma^z.
DensityOperator thermal_qubit_state(double beta, double omega);

/// |1><1| at the measured site, thermal states at every other site.
DensityOperator build_initial_state(const ChainSpec& spec);

} // namespace qcool
