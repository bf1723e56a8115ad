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

#include "qcool/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcool {

namespace {

// Kronecker chain with `a` at site i, `b` at site j and identity elsewhere.
ComplexMatrix two_site_operator(const ComplexMatrix& a, int i, const ComplexMatrix& b, int j,
                                int num_sites) {
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int site = 1; site <= num_sites; ++site) {
        if (site == i) {
            out = kron(out, a);
        } else if (site == j) {
            out = kron(out, b);
        } else {
            out = kron(out, pauli::identity());
        }
    }
    return out;
}

} // namespace

ChainSpec ChainSpec::uniform(int num_sites, double omega) {
    ChainSpec spec;
    spec.num_sites = num_sites;
    spec.fields.assign(static_cast<std::size_t>(std::max(num_sites, 0)), omega);
    return spec;
}

std::vector<std::string> ChainSpec::violations() const {
    std::vector<std::string> out;
    auto fail = [&out](auto&&... parts) {
        std::ostringstream os;
        (os << ... << parts);
        out.push_back(os.str());
    };
    if (num_sites < 2 || num_sites > kMaxSites) {
        fail("L = ", num_sites, " must lie in [2, ", kMaxSites, "]");
    }
    if (fields.size() != static_cast<std::size_t>(std::max(num_sites, 0))) {
        fail("fields has ", fields.size(), " entries, expected L = ", num_sites);
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (!(fields[i] > 0.0) || !std::isfinite(fields[i])) {
            fail("omega_", i + 1, " = ", fields[i], " must be positive and finite");
        }
    }
    if (!std::isfinite(coupling.J)) fail("J must be finite");
    if (!(coupling.alpha > 0.0) || !std::isfinite(coupling.alpha)) {
        fail("alpha = ", coupling.alpha, " must be positive");
    }
    if (!(coupling.gamma >= 0.0 && coupling.gamma <= 1.0)) {
        fail("gamma = ", coupling.gamma, " must lie in [0, 1]");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) fail("beta = ", beta, " must be >= 0");
    if (measured_site.value() < 1 || measured_site.value() > num_sites) {
        fail("measured site ", measured_site.value(), " outside [1, ", num_sites, "]");
    }
    if (!(time_step > 0.0) || !std::isfinite(time_step)) fail("t = ", time_step, " must be > 0");
    if (rounds < 1) fail("N must be >= 1");
    return out;
}

void ChainSpec::validate() const {
    const auto problems = violations();
    if (problems.empty()) return;
    std::string message = "invalid chain spec:";
    for (const auto& p : problems) message += "\n  - " + p;
    throw ValidationError(message);
}

double coupling_strength(const CouplingSpec& coupling, SiteIndex i, SiteIndex j) {
    if (i == j) throw ArgumentError("coupling strength needs two distinct sites");
    const double distance = std::abs(i.value() - j.value());
    return coupling.J / std::pow(distance, coupling.alpha);
}

ComplexMatrix build_local_hamiltonians(const ChainSpec& spec) {
    spec.validate();
    return build_local_hamiltonians(spec.fields);
}

ComplexMatrix build_local_hamiltonians(const std::vector<double>& fields) {
    const int n = static_cast<int>(fields.size());
    if (n < 1 || n > kMaxSites) throw CapacityError("local Hamiltonian needs 1..10 sites");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(dim);
    for (Eigen::Index index = 0; index < dim; ++index) {
        for (int site = 1; site <= n; ++site) {
            const double sz = site_bit(index, site, n) == 0 ? 1.0 : -1.0;
            diagonal(index) += 0.5 * fields[site - 1] * sz;
        }
    }
    return diagonal.cast<Complex>().asDiagonal();
}

ComplexMatrix build_interaction_hamiltonian(const ChainSpec& spec) {
    spec.validate();
    const int n = spec.num_sites;
    const Eigen::Index dim = Eigen::Index{1} << n;
    const double gamma = spec.coupling.gamma;
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            const double jij = coupling_strength(spec.coupling, SiteIndex{i}, SiteIndex{j});
            if (jij == 0.0) continue;
            h += (jij / 4.0) *
                 ((1.0 + gamma) * two_site_operator(pauli::x(), i, pauli::x(), j, n) +
                  (1.0 - gamma) * two_site_operator(pauli::y(), i, pauli::y(), j, n));
        }
    }
    return h;
}

HamiltonianSet build_evolution_hamiltonian(const ChainSpec& spec) {
    HamiltonianSet set;
    set.local_sum = build_local_hamiltonians(spec);
    set.interaction = build_interaction_hamiltonian(spec);
    set.evolution = set.local_sum + set.interaction;
    return set;
}

PureState local_ground_state(double omega) {
    if (!(omega > 0.0)) throw ArgumentError("local field must be positive");
    ComplexVector amplitudes = ComplexVector::Zero(2);
    amplitudes(1) = 1.0;
    return PureState(std::move(amplitudes));
}

DensityOperator thermal_qubit_state(double beta, double omega) {
    if (!(beta >= 0.0)) throw ArgumentError("inverse temperature must be >= 0");
    if (!(omega > 0.0)) throw ArgumentError("local field must be positive");
    // Energies +omega/2 for |0>, -omega/2 for |1>.
    const double ground = 1.0 / (1.0 + std::exp(-beta * omega));
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(0, 0) = 1.0 - ground;
    rho(1, 1) = ground;
    return DensityOperator(std::move(rho), 1);
}

DensityOperator build_initial_state(const ChainSpec& spec) {
    spec.validate();
    ComplexMatrix rho = ComplexMatrix::Identity(1, 1);
    for (int site = 1; site <= spec.num_sites; ++site) {
        const double omega = spec.fields[site - 1];
        if (site == spec.measured_site.value()) {
            rho = kron(rho, local_ground_state(omega).projector().matrix());
        } else {
            rho = kron(rho, thermal_qubit_state(spec.beta, omega).matrix());
        }
    }
    return DensityOperator(std::move(rho), spec.num_sites);
}

} // namespace qcool
