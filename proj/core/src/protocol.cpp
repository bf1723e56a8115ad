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

#include "qcool/protocol.hpp"

#include <algorithm>
#include <string>

#include <Eigen/SVD>

#include "qcool/linalg.hpp"

namespace qcool {

namespace {

// state <- map state map^dag / p in place; returns p.
double conditional_step(ComplexMatrix& state, const ComplexMatrix& map) {
    ComplexMatrix next = map * state * map.adjoint();
    const double probability = next.trace().real();
    if (!(probability > tol::kZeroBranch)) return probability;
    next /= probability;
    state = 0.5 * (next + next.adjoint());
    return probability;
}

} // namespace

ConditionalMap::ConditionalMap(ComplexMatrix matrix, SiteIndex measured_site)
    : matrix_(std::move(matrix)), measured_site_(measured_site), num_sites_(0) {
    if (matrix_.rows() != matrix_.cols()) throw ValidationError("conditional map must be square");
    num_sites_ = sites_for_dimension(matrix_.rows());
    measured_site_.check(num_sites_);
    if (!all_finite(matrix_)) throw ValidationError("conditional map has non-finite entries");
    const double norm = Eigen::BDCSVD<ComplexMatrix>(matrix_).singularValues()(0);
    if (norm > 1.0 + 1e-10) {
        throw ValidationError("conditional map is not a contraction (norm " +
                              std::to_string(norm) + ")");
    }
}

std::optional<double> ProtocolTrace::fidelity(std::size_t round, SiteIndex site) const {
    if (round < 1 || round > site_fidelities.size()) {
        throw IndexError("round " + std::to_string(round) + " outside the trace");
    }
    site.check(num_sites);
    return site_fidelities[round - 1][site.value() - 1];
}

ComplexMatrix measurement_projector(int num_sites, SiteIndex site) {
    return embed_single_site(pauli::ground_projector(), site, num_sites);
}

ComplexMatrix evolution_operator(const ChainSpec& spec) {
    return hermitian_evolution(build_evolution_hamiltonian(spec).evolution, spec.time_step);
}

ConditionalMap conditional_map(const ChainSpec& spec) {
    const ComplexMatrix projector = measurement_projector(spec.num_sites, spec.measured_site);
    return ConditionalMap(projector * evolution_operator(spec), spec.measured_site);
}

RoundResult run_round(const DensityOperator& state, const ComplexMatrix& unitary,
                      const ComplexMatrix& projector) {
    const Eigen::Index dim = state.dimension();
    if (unitary.rows() != dim || unitary.cols() != dim || projector.rows() != dim ||
        projector.cols() != dim) {
        throw ArgumentError("run_round operands have inconsistent dimensions");
    }
    if (unitarity_defect(unitary) > tol::kUnitary) throw ValidationError("evolution is not unitary");
    ComplexMatrix next = state.matrix();
    const double probability = conditional_step(next, projector * unitary);
    if (!(probability > tol::kZeroBranch)) throw ZeroBranchError(0, probability);
    return {DensityOperator(std::move(next), state.num_sites()), std::min(probability, 1.0)};
}

ProtocolRunner::ProtocolRunner(const ChainSpec& spec) : spec_(spec) {
    spec_.validate();
    const int n = spec_.num_sites;
    const int measured = spec_.measured_site.value();
    const Eigen::Index dim = Eigen::Index{1} << n;
    for (Eigen::Index index = 0; index < dim; ++index) {
        if (site_bit(index, measured, n) == 1) support_.push_back(index);
    }
    const auto block = static_cast<Eigen::Index>(support_.size());

    const ComplexMatrix unitary = evolution_operator(spec_);
    map_.resize(block, block);
    for (Eigen::Index a = 0; a < block; ++a) {
        for (Eigen::Index b = 0; b < block; ++b) map_(a, b) = unitary(support_[a], support_[b]);
    }

    const ComplexMatrix initial = build_initial_state(spec_).matrix();
    state_.resize(block, block);
    for (Eigen::Index a = 0; a < block; ++a) {
        for (Eigen::Index b = 0; b < block; ++b) state_(a, b) = initial(support_[a], support_[b]);
    }

    ground_indices_.resize(static_cast<std::size_t>(n));
    for (int site = 1; site <= n; ++site) {
        for (Eigen::Index a = 0; a < block; ++a) {
            if (site_bit(support_[a], site, n) == 1) ground_indices_[site - 1].push_back(a);
        }
    }
}

double ProtocolRunner::advance() {
    const double probability = conditional_step(state_, map_);
    if (!(probability > tol::kZeroBranch)) throw ZeroBranchError(rounds_ + 1, probability);
    ++rounds_;
    cumulative_ *= std::min(probability, 1.0);
    return probability;
}

double ProtocolRunner::ground_population(SiteIndex site) const {
    site.check(spec_.num_sites);
    double sum = 0.0;
    for (Eigen::Index a : ground_indices_[site.value() - 1]) sum += state_(a, a).real();
    return std::clamp(sum, 0.0, 1.0);
}

std::vector<std::optional<double>> ProtocolRunner::site_fidelities() const {
    std::vector<std::optional<double>> out(static_cast<std::size_t>(spec_.num_sites));
    for (int site = 1; site <= spec_.num_sites; ++site) {
        if (site != spec_.measured_site.value()) out[site - 1] = ground_population(SiteIndex{site});
    }
    return out;
}

ComplexMatrix ProtocolRunner::state_matrix() const {
    const Eigen::Index dim = Eigen::Index{1} << spec_.num_sites;
    ComplexMatrix full = ComplexMatrix::Zero(dim, dim);
    const auto block = static_cast<Eigen::Index>(support_.size());
    for (Eigen::Index a = 0; a < block; ++a) {
        for (Eigen::Index b = 0; b < block; ++b) full(support_[a], support_[b]) = state_(a, b);
    }
    return full;
}

DensityOperator ProtocolRunner::state() const {
    return DensityOperator(state_matrix(), spec_.num_sites);
}

ProtocolTrace run_protocol(const ChainSpec& spec) {
    ProtocolRunner runner(spec);
    std::vector<double> probabilities;
    std::vector<std::vector<std::optional<double>>> fidelities;
    probabilities.reserve(spec.rounds);
    fidelities.reserve(spec.rounds);
    for (std::size_t n = 0; n < spec.rounds; ++n) {
        runner.advance();
        probabilities.push_back(runner.cumulative_probability());
        fidelities.push_back(runner.site_fidelities());
    }
    return ProtocolTrace{spec.num_sites, spec.measured_site, spec.rounds,
                         std::move(probabilities), std::move(fidelities), runner.state()};
}

DensityOperator reduced_qubit_state(const DensityOperator& state, SiteIndex site) {
    site.check(state.num_sites());
    const SiteIndex keep[] = {site};
    return partial_trace(state, keep);
}

} // namespace qcool
