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

#include "qcool/model.hpp"
#include "qcool/types.hpp"

namespace qcool {

/// The non-unitary one-round map Pi_1 U on the full 2^L space.
class ConditionalMap {
public:
    /// Throws ValidationError unless `matrix` is square, 2^L-dimensional and a
    /// contraction (spectral norm <= 1 + 1e-10).
    ConditionalMap(ComplexMatrix matrix, SiteIndex measured_site);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    SiteIndex measured_site() const noexcept { return measured_site_; }
    int num_sites() const noexcept { return num_sites_; }

private:
    ComplexMatrix matrix_;
    SiteIndex measured_site_;
    int num_sites_;
};

/// Per-round record of a post-selected protocol run.
struct ProtocolTrace {
    int num_sites = 0;
    SiteIndex measured_site{1};
    std::size_t rounds = 0;
    /// p_n for n = 1..N.
    std::vector<double> cumulative_probability;
    /// site_fidelities[n-1][i-1] = F_{A_i}(n); nullopt in the measured column.
    std::vector<std::vector<std::optional<double>>> site_fidelities;
    DensityOperator final_state;

    std::optional<double> fidelity(std::size_t round, SiteIndex site) const;
};

/// |1><1| at `site`, identity elsewhere.
ComplexMatrix measurement_projector(int num_sites, SiteIndex site);

/// exp(-i H_ev t) for the spec.
ComplexMatrix evolution_operator(const ChainSpec& spec);

/// Pi_1 U for the spec.
ConditionalMap conditional_map(const ChainSpec& spec);

struct RoundResult {
    DensityOperator state;
    double step_probability;
};

/// One evolve-measure-post-select round: (Pi U rho U^dag Pi / p, p).
/// Throws ZeroBranchError when p <= 1e-14.
RoundResult run_round(const DensityOperator& state, const ComplexMatrix& unitary,
                      const ComplexMatrix& projector);

/// Stepwise protocol engine.
///
/// After the first projection the state lives in the range of Pi_1, so the
/// runner keeps only that 2^(L-1) block and steps it with the compressed map
/// K = Pi_1 U Pi_1. The initial state already lies in that range.
class ProtocolRunner {
public:
    explicit ProtocolRunner(const ChainSpec& spec);

    /// Performs one round and returns its step probability.
    /// Throws ZeroBranchError carrying the 1-based round index.
    double advance();

    const ChainSpec& spec() const noexcept { return spec_; }
    std::size_t rounds_completed() const noexcept { return rounds_; }
    double cumulative_probability() const noexcept { return cumulative_; }

    /// <1| rho_{A_i} |1> of the current state.
    double ground_population(SiteIndex site) const;
    /// One entry per site, nullopt at the measured site.
    std::vector<std::optional<double>> site_fidelities() const;

    /// Current normalized state on the full 2^L space.
    ComplexMatrix state_matrix() const;
    DensityOperator state() const;

private:
    ChainSpec spec_;
    std::vector<Eigen::Index> support_;
    ComplexMatrix map_;
    ComplexMatrix state_;
    std::vector<std::vector<Eigen::Index>> ground_indices_;
    double cumulative_ = 1.0;
    std::size_t rounds_ = 0;
};

/// N rounds with the spec's fixed U(t) and Pi_1.
ProtocolTrace run_protocol(const ChainSpec& spec);

/// Single-site marginal of `state`.
DensityOperator reduced_qubit_state(const DensityOperator& state, SiteIndex site);

} // namespace qcool
