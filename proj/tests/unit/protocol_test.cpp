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
#include <numbers>

#include "qcool/errors.hpp"
#include "qcool/linalg.hpp"
#include "qcool/model.hpp"
#include "qcool/observables.hpp"
#include "qcool/oracle.hpp"
#include "qcool/protocol.hpp"
#include "support.hpp"

namespace qcool {
namespace {

using testing::ket;
using testing::kSeed;
using testing::max_diff;

constexpr double kPi = std::numbers::pi;

ChainSpec flip_flop(double jt) {
    ChainSpec spec = ChainSpec::uniform(2);
    spec.coupling = {jt, 2.5, 0.0};
    spec.rounds = 1;
    return spec;
}

TEST(MeasurementProjector, Examples) {
    EXPECT_LT(max_diff(measurement_projector(1, SiteIndex{1}), pauli::ground_projector()), 1e-15);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected.diagonal() << 0.0, 0.0, 1.0, 1.0;
    EXPECT_LT(max_diff(measurement_projector(2, SiteIndex{1}), expected), 1e-15);
    EXPECT_NEAR(measurement_projector(4, SiteIndex{3}).trace().real(), 8.0, 1e-15);
    EXPECT_THROW(measurement_projector(3, SiteIndex{4}), IndexError);
}

TEST(MeasurementProjector, IdempotentHermitianRankHalf) {
    for (int n = 1; n <= 6; ++n) {
        for (int site = 1; site <= n; ++site) {
            const ComplexMatrix pi = measurement_projector(n, SiteIndex{site});
            EXPECT_LT(max_diff(pi * pi, pi), 1e-15);
            EXPECT_LT(hermiticity_defect(pi), 1e-15);
            EXPECT_NEAR(pi.trace().real(), std::ldexp(1.0, n - 1), 1e-12);
        }
    }
}

TEST(RunRound, IdentityEvolutionLeavesInitialState) {
    ChainSpec spec = ChainSpec::uniform(3);
    spec.beta = 0.4;
    const DensityOperator rho = build_initial_state(spec);
    const RoundResult result = run_round(rho, ComplexMatrix::Identity(8, 8),
                                         measurement_projector(3, SiteIndex{1}));
    EXPECT_NEAR(result.step_probability, 1.0, 1e-14);
    EXPECT_LT(max_diff(result.state.matrix(), rho.matrix()), 1e-14);
}

TEST(RunRound, FlipFlopAtPiTransfersExcitation) {
    const ChainSpec spec = flip_flop(kPi);
    const RoundResult result = run_round(build_initial_state(spec), evolution_operator(spec),
                                         measurement_projector(2, SiteIndex{1}));
    EXPECT_NEAR(result.step_probability, 0.5, 1e-12);
    EXPECT_LT(max_diff(reduced_qubit_state(result.state, SiteIndex{2}).matrix(),
                       pauli::ground_projector()),
              1e-12);
}

TEST(RunRound, FlipFlopAtFullPeriodKeepsMixture) {
    for (double jt : {0.0, 2.0 * kPi, 4.0 * kPi}) {
        const ChainSpec spec = flip_flop(jt);
        const RoundResult result = run_round(build_initial_state(spec), evolution_operator(spec),
                                             measurement_projector(2, SiteIndex{1}));
        EXPECT_NEAR(result.step_probability, 1.0, 1e-12);
        EXPECT_LT(max_diff(reduced_qubit_state(result.state, SiteIndex{2}).matrix(),
                           pauli::identity() / 2.0),
                  1e-12);
    }
}

TEST(RunRound, FlipFlopClosedFormForAnyCoupling) {
    std::mt19937_64 rng(kSeed + 20);
    for (int trial = 0; trial < 20; ++trial) {
        const double jt = testing::uniform(rng, 0.0, 3.0);
        const ChainSpec spec = flip_flop(jt);
        const RoundResult result = run_round(build_initial_state(spec), evolution_operator(spec),
                                             measurement_projector(2, SiteIndex{1}));
        const double c2 = std::pow(std::cos(jt / 2.0), 2);
        EXPECT_NEAR(result.step_probability, (1.0 + c2) / 2.0, 1e-12);
        EXPECT_NEAR(ground_fidelity(reduced_qubit_state(result.state, SiteIndex{2})),
                    1.0 / (1.0 + c2), 1e-12);
    }
}

TEST(RunRound, RejectsBadOperands) {
    const DensityOperator rho = build_initial_state(ChainSpec::uniform(2));
    const ComplexMatrix pi = measurement_projector(2, SiteIndex{1});
    EXPECT_THROW(run_round(rho, ComplexMatrix::Identity(8, 8), pi), ArgumentError);
    EXPECT_THROW(run_round(rho, ComplexMatrix(2.0 * ComplexMatrix::Identity(4, 4)), pi),
                 ValidationError);
    const ComplexMatrix flip = kron(pauli::x(), pauli::identity());
    EXPECT_THROW(run_round(rho, flip, pi), ZeroBranchError);
}

TEST(RunProtocol, ThreeSiteCoolingExistsOnGrid) {
    ChainSpec spec = ChainSpec::uniform(3);
    spec.rounds = 10;
    bool found = false;
    for (int k = 0; k <= 100 && !found; ++k) {
        spec.coupling.J = 0.1 * k;
        const ProtocolTrace trace = run_protocol(spec);
        found = *trace.fidelity(10, SiteIndex{2}) >= 0.99 && *trace.fidelity(10, SiteIndex{3}) >= 0.99;
    }
    EXPECT_TRUE(found);
}

TEST(RunProtocol, MiddleMeasuredOuterSitesAgree) {
    ChainSpec spec = ChainSpec::uniform(3);
    spec.measured_site = SiteIndex{2};
    spec.rounds = 200;
    const ProtocolTrace trace = run_protocol(spec);
    for (std::size_t n = 1; n <= spec.rounds; ++n) {
        EXPECT_NEAR(*trace.fidelity(n, SiteIndex{1}), *trace.fidelity(n, SiteIndex{3}), 1e-10);
    }
}

TEST(RunProtocol, FlipFlopTrace) {
    const ProtocolTrace trace = run_protocol(flip_flop(kPi));
    ASSERT_EQ(trace.cumulative_probability.size(), 1u);
    EXPECT_NEAR(trace.cumulative_probability[0], 0.5, 1e-10);
    EXPECT_NEAR(*trace.fidelity(1, SiteIndex{2}), 1.0, 1e-10);
    EXPECT_FALSE(trace.fidelity(1, SiteIndex{1}).has_value());
    EXPECT_THROW(trace.fidelity(2, SiteIndex{2}), IndexError);
}

TEST(RunProtocol, ProbabilityMonotoneAndFidelitiesBounded) {
    std::mt19937_64 rng(kSeed + 21);
    for (int trial = 0; trial < 30; ++trial) {
        const ChainSpec spec = testing::random_spec(rng, {.max_sites = 6, .max_rounds = 40});
        const ProtocolTrace trace = run_protocol(spec);
        double previous = 1.0;
        for (std::size_t n = 0; n < spec.rounds; ++n) {
            const double p = trace.cumulative_probability[n];
            EXPECT_GT(p, 0.0);
            EXPECT_LE(p, previous + 1e-15);
            previous = p;
            for (int site = 1; site <= spec.num_sites; ++site) {
                const auto f = trace.site_fidelities[n][site - 1];
                if (site == spec.measured_site.value()) {
                    EXPECT_FALSE(f.has_value());
                } else {
                    ASSERT_TRUE(f.has_value());
                    EXPECT_GE(*f, -1e-10);
                    EXPECT_LE(*f, 1.0 + 1e-10);
                }
            }
        }
    }
}

TEST(RunProtocol, FidelitiesMatchPartialTraceOfFinalState) {
    std::mt19937_64 rng(kSeed + 22);
    for (int trial = 0; trial < 10; ++trial) {
        const ChainSpec spec = testing::random_spec(rng, {.max_sites = 5, .max_rounds = 8});
        const ProtocolTrace trace = run_protocol(spec);
        for (int site = 1; site <= spec.num_sites; ++site) {
            if (site == spec.measured_site.value()) continue;
            EXPECT_NEAR(*trace.fidelity(spec.rounds, SiteIndex{site}),
                        ground_fidelity(reduced_qubit_state(trace.final_state, SiteIndex{site})),
                        1e-12);
        }
    }
}

TEST(RunProtocol, MirrorInvariance) {
    std::mt19937_64 rng(kSeed + 23);
    for (int trial = 0; trial < 15; ++trial) {
        const ChainSpec spec =
            testing::random_spec(rng, {.max_sites = 6, .max_rounds = 20, .random_fields = false});
        ChainSpec mirrored = spec;
        mirrored.measured_site = SiteIndex{spec.num_sites + 1 - spec.measured_site.value()};
        const ProtocolTrace a = run_protocol(spec);
        const ProtocolTrace b = run_protocol(mirrored);
        for (std::size_t n = 0; n < spec.rounds; ++n) {
            EXPECT_NEAR(a.cumulative_probability[n], b.cumulative_probability[n], 1e-10);
            for (int site = 1; site <= spec.num_sites; ++site) {
                const auto fa = a.site_fidelities[n][site - 1];
                const auto fb = b.site_fidelities[n][spec.num_sites - site];
                ASSERT_EQ(fa.has_value(), fb.has_value());
                if (fa) {
                    EXPECT_NEAR(*fa, *fb, 1e-10);
                }
            }
        }
    }
}

TEST(RunProtocol, SignFlipLeavesObservablesAndConjugatesState) {
    // Isotropic coupling, uniform field: the field term is conserved, so J -> -J
    // is complex conjugation of the evolution.
    std::mt19937_64 rng(kSeed + 24);
    for (int trial = 0; trial < 15; ++trial) {
        ChainSpec spec = testing::random_spec(
            rng, {.max_sites = 5, .max_rounds = 30, .random_gamma = false, .random_fields = false});
        spec.fields.assign(spec.fields.size(), testing::uniform(rng, 0.3, 2.0));
        ChainSpec flipped = spec;
        flipped.coupling.J = -spec.coupling.J;
        const ProtocolTrace a = run_protocol(spec);
        const ProtocolTrace b = run_protocol(flipped);
        for (std::size_t n = 0; n < spec.rounds; ++n) {
            EXPECT_NEAR(a.cumulative_probability[n], b.cumulative_probability[n], 1e-10);
            for (int site = 1; site <= spec.num_sites; ++site) {
                const auto fa = a.site_fidelities[n][site - 1];
                const auto fb = b.site_fidelities[n][site - 1];
                if (fa) {
                    EXPECT_NEAR(*fa, *fb, 1e-10);
                }
            }
        }
        EXPECT_LT(max_diff(a.final_state.matrix(), b.final_state.matrix().conjugate()), 1e-10);
    }
}

TEST(RunProtocol, MagnetizationSupportOfThreeSiteState) {
    ChainSpec spec = ChainSpec::uniform(3);
    spec.rounds = 7;
    const ComplexMatrix rho = run_protocol(spec).final_state.matrix();
    for (const char* bits : {"000", "001", "010", "011"}) {
        const ComplexVector v = ket(bits);
        EXPECT_LT(std::abs(v.dot(rho * v)), 1e-10) << bits;
    }
    ComplexMatrix support = ComplexMatrix::Zero(8, 8);
    for (const char* bits : {"100", "110", "101", "111"}) support += testing::projector(bits);
    EXPECT_LT(max_diff(support * rho * support, rho), 1e-10);
}

TEST(RunProtocol, ThreeSiteMiddleClosedForm) {
    // Nearest-neighbour limit: F(N) = (3 + c^{2N}) / (4 (1 + c^{2N})), c = cos(J t / sqrt 2).
    ChainSpec spec = ChainSpec::uniform(3);
    spec.measured_site = SiteIndex{2};
    spec.coupling.alpha = 60.0;
    spec.rounds = 4;
    for (double j : {0.3, 1.1, 2.0, 3.7, 5.2}) {
        spec.coupling.J = j;
        const ProtocolTrace trace = run_protocol(spec);
        const double c = std::cos(j / std::sqrt(2.0));
        for (std::size_t n = 1; n <= spec.rounds; ++n) {
            const double c2n = std::pow(c, 2.0 * static_cast<double>(n));
            EXPECT_NEAR(*trace.fidelity(n, SiteIndex{1}), (3.0 + c2n) / (4.0 * (1.0 + c2n)), 1e-12);
        }
    }
}

TEST(RunProtocol, SignFlipInNearestNeighbourLimitForAnyFields) {
    std::mt19937_64 rng(kSeed + 27);
    for (int trial = 0; trial < 10; ++trial) {
        ChainSpec spec = testing::random_spec(rng, {.max_sites = 5, .max_rounds = 20});
        spec.coupling.alpha = 80.0;
        ChainSpec flipped = spec;
        flipped.coupling.J = -spec.coupling.J;
        const ProtocolTrace a = run_protocol(spec);
        const ProtocolTrace b = run_protocol(flipped);
        for (std::size_t n = 0; n < spec.rounds; ++n) {
            EXPECT_NEAR(a.cumulative_probability[n], b.cumulative_probability[n], 1e-10);
        }
        for (int site = 1; site <= spec.num_sites; ++site) {
            const auto fa = a.fidelity(spec.rounds, SiteIndex{site});
            if (fa) {
                EXPECT_NEAR(*fa, *b.fidelity(spec.rounds, SiteIndex{site}), 1e-10);
            }
        }
    }
}

TEST(RunProtocol, ZeroBranchCarriesRoundIndex) {
    const ZeroBranchError error(3, 1e-20);
    EXPECT_EQ(error.round(), 3u);
    EXPECT_EQ(error.probability(), 1e-20);
    ChainSpec invalid = ChainSpec::uniform(3);
    invalid.rounds = 0;
    EXPECT_THROW(run_protocol(invalid), ValidationError);
}

TEST(ReducedQubitState, Examples) {
    std::mt19937_64 rng(kSeed + 25);
    const ComplexMatrix a = testing::random_density(rng, 1);
    const ComplexMatrix b = testing::random_density(rng, 1);
    const DensityOperator product(kron(a, b), 2);
    EXPECT_LT(max_diff(reduced_qubit_state(product, SiteIndex{2}).matrix(), b), 1e-14);

    ChainSpec spec = ChainSpec::uniform(4);
    spec.measured_site = SiteIndex{3};
    EXPECT_LT(max_diff(reduced_qubit_state(build_initial_state(spec), SiteIndex{3}).matrix(),
                       pauli::ground_projector()),
              1e-15);

    const ComplexVector ghz = (ket("000") + ket("111")) / std::sqrt(2.0);
    const DensityOperator ghz_state(ComplexMatrix(ghz * ghz.adjoint()), 3);
    for (int site = 1; site <= 3; ++site) {
        EXPECT_LT(max_diff(reduced_qubit_state(ghz_state, SiteIndex{site}).matrix(),
                           pauli::identity() / 2.0),
                  1e-15);
    }
    EXPECT_THROW(reduced_qubit_state(ghz_state, SiteIndex{4}), IndexError);
}

TEST(ConditionalMap, ContractionEnforced) {
    const ChainSpec spec = ChainSpec::uniform(3);
    const ConditionalMap map = conditional_map(spec);
    EXPECT_EQ(map.num_sites(), 3);
    EXPECT_LT(max_diff(map.matrix(),
                       measurement_projector(3, SiteIndex{1}) * evolution_operator(spec)),
              1e-15);
    EXPECT_THROW(ConditionalMap(ComplexMatrix(2.0 * ComplexMatrix::Identity(8, 8)), SiteIndex{1}),
                 ValidationError);
    EXPECT_THROW(ConditionalMap(ComplexMatrix::Identity(6, 6), SiteIndex{1}), ArgumentError);
    EXPECT_THROW(ConditionalMap(ComplexMatrix::Identity(8, 8), SiteIndex{4}), IndexError);
}

TEST(Oracle, SizeGuard) {
    ChainSpec spec = ChainSpec::uniform(5);
    spec.rounds = 2;
    EXPECT_THROW(brute_force_oracle(spec), CapacityError);
    spec = ChainSpec::uniform(3);
    spec.rounds = 6;
    EXPECT_THROW(brute_force_oracle(spec), CapacityError);
}

void expect_traces_match(const ProtocolTrace& a, const ProtocolTrace& b, double tol) {
    ASSERT_EQ(a.rounds, b.rounds);
    ASSERT_EQ(a.num_sites, b.num_sites);
    for (std::size_t n = 0; n < a.rounds; ++n) {
        EXPECT_NEAR(a.cumulative_probability[n], b.cumulative_probability[n], tol);
        for (int site = 0; site < a.num_sites; ++site) {
            const auto fa = a.site_fidelities[n][site];
            const auto fb = b.site_fidelities[n][site];
            ASSERT_EQ(fa.has_value(), fb.has_value());
            if (fa) {
                EXPECT_NEAR(*fa, *fb, tol);
            }
        }
    }
    EXPECT_LT(max_diff(a.final_state.matrix(), b.final_state.matrix()), tol);
}

TEST(Oracle, ThreeSiteProbabilityAtRoundThree) {
    ChainSpec spec = ChainSpec::uniform(3);
    spec.rounds = 3;
    expect_traces_match(run_protocol(spec), brute_force_oracle(spec), 1e-10);
}

TEST(Oracle, FourSiteLongRangeFinalState) {
    ChainSpec spec = ChainSpec::uniform(4);
    spec.measured_site = SiteIndex{2};
    spec.coupling.alpha = 1.0;
    spec.rounds = 5;
    expect_traces_match(run_protocol(spec), brute_force_oracle(spec), 1e-9);
}

TEST(Oracle, EquivalenceOnRandomSpecs) {
    std::mt19937_64 rng(kSeed + 26);
    for (int trial = 0; trial < 60; ++trial) {
        const ChainSpec spec = testing::random_spec(rng);
        SCOPED_TRACE("trial " + std::to_string(trial));
        expect_traces_match(run_protocol(spec), brute_force_oracle(spec), 1e-9);
    }
}

} // namespace
} // namespace qcool
