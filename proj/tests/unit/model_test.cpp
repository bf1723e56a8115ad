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

#include <gtest/gtest.h>

#include <cmath>

#include "qcool/errors.hpp"
#include "qcool/linalg.hpp"
#include "qcool/model.hpp"
#include "qcool/observables.hpp"
#include "support.hpp"

namespace qcool {
namespace {

using testing::ket;
using testing::kSeed;
using testing::max_diff;

Eigen::Index index_of(const std::string& bits) {
    Eigen::Index index = 0;
    for (char b : bits) index = (index << 1) | (b == '1' ? 1 : 0);
    return index;
}

ComplexMatrix total_sigma_z(int n) {
    ComplexMatrix total = ComplexMatrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (int site = 1; site <= n; ++site) total += embed_single_site(pauli::z(), SiteIndex{site}, n);
    return total;
}

// Site relabelling i -> L + 1 - i as a permutation of basis states.
ComplexMatrix mirror_permutation(int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index index = 0; index < dim; ++index) {
        Eigen::Index reversed = 0;
        for (int b = 0; b < n; ++b) reversed |= ((index >> b) & 1) << (n - 1 - b);
        p(reversed, index) = 1.0;
    }
    return p;
}

TEST(CouplingStrength, Examples) {
    EXPECT_DOUBLE_EQ(coupling_strength({3.0, 1.0, 0.0}, SiteIndex{1}, SiteIndex{3}), 1.5);
    EXPECT_DOUBLE_EQ(coupling_strength({3.0, 2.5, 0.0}, SiteIndex{1}, SiteIndex{2}), 3.0);
    EXPECT_DOUBLE_EQ(coupling_strength({-2.0, 2.0, 0.0}, SiteIndex{2}, SiteIndex{4}), -0.5);
    EXPECT_DOUBLE_EQ(coupling_strength({-2.0, 2.0, 0.0}, SiteIndex{4}, SiteIndex{2}), -0.5);
}

TEST(CouplingStrength, RejectsEqualSites) {
    EXPECT_THROW(coupling_strength({}, SiteIndex{2}, SiteIndex{2}), ArgumentError);
}

TEST(LocalHamiltonian, SingleSite) {
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected.diagonal() << 0.5, -0.5;
    EXPECT_LT(max_diff(build_local_hamiltonians(std::vector<double>{1.0}), expected), 1e-15);
}

TEST(LocalHamiltonian, TwoSitesGroundEnergy) {
    const ComplexMatrix h = build_local_hamiltonians(ChainSpec::uniform(2));
    EXPECT_NEAR(h(index_of("11"), index_of("11")).real(), -1.0, 1e-15);
}

TEST(LocalHamiltonian, ThreeSitesDiagonalEntry) {
    const ComplexMatrix h = build_local_hamiltonians(ChainSpec::uniform(3));
    EXPECT_NEAR(h(index_of("100"), index_of("100")).real(), 0.5, 1e-15);
    EXPECT_LT(max_diff(h, ComplexMatrix(h.diagonal().asDiagonal())), 1e-15);
}

TEST(InteractionHamiltonian, FlipFlopMatrixElement) {
    ChainSpec spec = ChainSpec::uniform(2);
    spec.coupling = {1.0, 1.7, 0.0};
    const ComplexMatrix h = build_interaction_hamiltonian(spec);
    EXPECT_NEAR(std::abs(h(index_of("01"), index_of("10")) - Complex(0.5)), 0.0, 1e-15);
    EXPECT_LT(h.diagonal().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(InteractionHamiltonian, FullyAnisotropicIsHalfSigmaXX) {
    // gamma = 1 leaves (J/2) sigma^x sigma^x, which couples 00 <-> 11 and 01 <-> 10 alike.
    ChainSpec spec = ChainSpec::uniform(2);
    spec.coupling = {1.0, 2.0, 1.0};
    const ComplexMatrix h = build_interaction_hamiltonian(spec);
    EXPECT_NEAR(std::abs(h(index_of("00"), index_of("11")) - Complex(0.5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(h(index_of("01"), index_of("10")) - Complex(0.5)), 0.0, 1e-15);
    EXPECT_LT(max_diff(h, kron(pauli::x(), pauli::x()) / 2.0), 1e-15);
}

TEST(InteractionHamiltonian, AnisotropyWeightsParityChannels) {
    std::mt19937_64 rng(kSeed + 15);
    for (int trial = 0; trial < 20; ++trial) {
        ChainSpec spec = ChainSpec::uniform(2);
        spec.coupling = {testing::uniform(rng, -4, 4), 2.0, testing::uniform(rng, 0, 1)};
        const ComplexMatrix h = build_interaction_hamiltonian(spec);
        const double j = spec.coupling.J;
        EXPECT_NEAR(std::abs(h(index_of("00"), index_of("11"))), std::abs(j * spec.coupling.gamma / 2.0),
                    1e-14);
        EXPECT_NEAR(std::abs(h(index_of("01"), index_of("10"))), std::abs(j / 2.0), 1e-14);
    }
}

TEST(InteractionHamiltonian, LongRangeFlipFlop) {
    ChainSpec spec = ChainSpec::uniform(3);
    spec.coupling = {3.0, 1.0, 0.0};
    const ComplexMatrix h = build_interaction_hamiltonian(spec);
    EXPECT_NEAR(std::abs(h(index_of("100"), index_of("001")) - Complex(0.75)), 0.0, 1e-15);
}

TEST(EvolutionHamiltonian, MagnetizationConservedWithoutAnisotropy) {
    std::mt19937_64 rng(kSeed + 10);
    for (int trial = 0; trial < 20; ++trial) {
        const ChainSpec spec = testing::random_spec(
            rng, {.min_sites = 2, .max_sites = 6, .max_rounds = 1, .random_gamma = false});
        const HamiltonianSet set = build_evolution_hamiltonian(spec);
        const ComplexMatrix sz = total_sigma_z(spec.num_sites);
        EXPECT_LT(max_abs(set.evolution * sz - sz * set.evolution), 1e-10);
        const ComplexMatrix u = hermitian_evolution(set.evolution, spec.time_step);
        EXPECT_LT(max_abs(u * sz - sz * u), 1e-10);
    }
}

TEST(EvolutionHamiltonian, SumAndHermiticity) {
    std::mt19937_64 rng(kSeed + 11);
    for (int trial = 0; trial < 20; ++trial) {
        const ChainSpec spec = testing::random_spec(rng, {.max_sites = 6});
        const HamiltonianSet set = build_evolution_hamiltonian(spec);
        EXPECT_LT(hermiticity_defect(set.local_sum), 1e-10);
        EXPECT_LT(hermiticity_defect(set.interaction), 1e-10);
        EXPECT_LT(hermiticity_defect(set.evolution), 1e-10);
        EXPECT_LT(max_diff(set.evolution, set.local_sum + set.interaction), 1e-12);
    }
}

TEST(EvolutionHamiltonian, ZeroCouplingLeavesLocalSum) {
    ChainSpec spec = ChainSpec::uniform(4);
    spec.coupling.J = 0.0;
    const HamiltonianSet set = build_evolution_hamiltonian(spec);
    EXPECT_LT(max_diff(set.evolution, set.local_sum), 1e-15);
}

TEST(EvolutionHamiltonian, TwoSiteSpectrum) {
    ChainSpec spec = ChainSpec::uniform(2);
    spec.coupling = {2.0, 2.5, 0.0};
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(build_evolution_hamiltonian(spec).evolution);
    const Eigen::Vector4d expected(-1.0, -1.0, 1.0, 1.0);
    EXPECT_LT((solver.eigenvalues() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(EvolutionHamiltonian, MirrorSymmetricForUniformFields) {
    std::mt19937_64 rng(kSeed + 12);
    for (int trial = 0; trial < 15; ++trial) {
        ChainSpec spec = testing::random_spec(rng, {.max_sites = 6, .random_fields = false});
        const ComplexMatrix p = mirror_permutation(spec.num_sites);
        const ComplexMatrix h = build_evolution_hamiltonian(spec).evolution;
        EXPECT_LT(max_diff(p * h * p.adjoint(), h), 1e-12);
    }
}

TEST(EvolutionHamiltonian, SignFlipEqualsStaggeredRotation) {
    // Z on even sites flips odd-distance terms only; at alpha = 80 the
    // even-distance terms are below round-off.
    ChainSpec spec = ChainSpec::uniform(4);
    spec.coupling = {2.3, 80.0, 0.4};
    ComplexMatrix z = ComplexMatrix::Identity(16, 16);
    for (int site = 2; site <= 4; site += 2) z = z * embed_single_site(pauli::z(), SiteIndex{site}, 4);
    ChainSpec flipped = spec;
    flipped.coupling.J = -spec.coupling.J;
    EXPECT_LT(max_diff(z * build_interaction_hamiltonian(spec) * z,
                       build_interaction_hamiltonian(flipped)),
              1e-12);
}

TEST(LocalGroundState, IsExcitationFreeKet) {
    EXPECT_LT((local_ground_state(1.0).amplitudes() - ket("1")).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((local_ground_state(2.0).amplitudes() - ket("1")).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(std::abs(local_ground_state(1.0).amplitudes().dot(ket("0"))), 0.0, 1e-15);
    EXPECT_THROW(local_ground_state(0.0), ArgumentError);
    EXPECT_THROW(local_ground_state(-1.0), ArgumentError);
}

TEST(ThermalQubitState, Examples) {
    EXPECT_LT(max_diff(thermal_qubit_state(0.0, 1.0).matrix(), ComplexMatrix::Identity(2, 2) / 2.0),
              1e-15);
    EXPECT_LT(max_diff(thermal_qubit_state(1e6, 1.0).matrix(), pauli::ground_projector()), 1e-10);
    EXPECT_NEAR(ground_fidelity(thermal_qubit_state(1.0, 1.0)), 0.731059, 1e-6);
    EXPECT_NEAR(ground_fidelity(thermal_qubit_state(1.0, 1.0)), 1.0 / (1.0 + std::exp(-1.0)), 1e-15);
}

TEST(ThermalQubitState, GroundPopulationStrictlyIncreasesWithBeta) {
    std::mt19937_64 rng(kSeed + 13);
    for (int trial = 0; trial < 50; ++trial) {
        const double omega = testing::uniform(rng, 0.1, 3.0);
        const double b1 = testing::uniform(rng, 0.0, 5.0);
        const double b2 = b1 + testing::uniform(rng, 0.01, 2.0);
        EXPECT_LT(ground_fidelity(thermal_qubit_state(b1, omega)),
                  ground_fidelity(thermal_qubit_state(b2, omega)));
    }
}

TEST(InitialState, ThreeSitesInfiniteTemperature) {
    ChainSpec spec = ChainSpec::uniform(3);
    const ComplexMatrix expected =
        kron(kron(pauli::ground_projector(), pauli::identity() / 2.0), pauli::identity() / 2.0);
    EXPECT_LT(max_diff(build_initial_state(spec).matrix(), expected), 1e-15);
}

TEST(InitialState, EightSitesUniformMixtureOnGroundSector) {
    const DensityOperator rho = build_initial_state(ChainSpec::uniform(8));
    const Eigen::VectorXd eig = rho.eigenvalues();
    int rank = 0;
    for (Eigen::Index k = 0; k < eig.size(); ++k) {
        if (eig(k) > 1e-12) {
            ++rank;
            EXPECT_NEAR(eig(k), 1.0 / 128.0, 1e-14);
        }
    }
    EXPECT_EQ(rank, 128);
    for (Eigen::Index index = 0; index < 256; ++index) {
        if (site_bit(index, 1, 8) == 0) {
            EXPECT_EQ(std::abs(rho.matrix()(index, index)), 0.0);
        }
    }
}

TEST(InitialState, AllTwoSiteMarginalsUnentangled) {
    std::mt19937_64 rng(kSeed + 14);
    for (int trial = 0; trial < 10; ++trial) {
        const ChainSpec spec = testing::random_spec(rng, {.max_sites = 5});
        const DensityOperator rho = build_initial_state(spec);
        for (int i = 1; i <= spec.num_sites; ++i) {
            for (int j = i + 1; j <= spec.num_sites; ++j) {
                const SiteIndex pair[] = {SiteIndex{i}, SiteIndex{j}};
                EXPECT_NEAR(log_negativity(partial_trace(rho, pair)), 0.0, 1e-12);
            }
        }
    }
}

TEST(ChainSpec, ValidationListsEveryViolation) {
    ChainSpec spec = ChainSpec::uniform(3);
    spec.coupling.alpha = 0.0;
    spec.coupling.gamma = 1.5;
    spec.fields[1] = -1.0;
    spec.measured_site = SiteIndex{5};
    spec.time_step = 0.0;
    spec.rounds = 0;
    spec.beta = -1.0;
    EXPECT_EQ(spec.violations().size(), 7u);
    try {
        spec.validate();
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        const std::string message = e.what();
        EXPECT_NE(message.find("alpha"), std::string::npos);
        EXPECT_NE(message.find("gamma"), std::string::npos);
        EXPECT_NE(message.find("omega_2"), std::string::npos);
    }
}

TEST(ChainSpec, SizeLimits) {
    EXPECT_FALSE(ChainSpec::uniform(1).violations().empty());
    EXPECT_FALSE(ChainSpec::uniform(11).violations().empty());
    EXPECT_TRUE(ChainSpec::uniform(10).violations().empty());
}

} // namespace
} // namespace qcool
