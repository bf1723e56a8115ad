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

#include "qcool/oracle.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace qcool {

namespace {

bool excited(Eigen::Index state, int site, int n) { return ((state >> (n - site)) & 1) == 0; }

// <a| H_ev |b> assembled element by element.
ComplexMatrix oracle_hamiltonian(const ChainSpec& spec) {
    const int n = spec.num_sites;
    const Eigen::Index dim = Eigen::Index{1} << n;
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        double diagonal = 0.0;
        for (int i = 1; i <= n; ++i) {
            diagonal += (excited(b, i, n) ? 0.5 : -0.5) * spec.fields[i - 1];
        }
        h(b, b) += diagonal;
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                const double jij = spec.coupling.J / std::pow(double(j - i), spec.coupling.alpha);
                const Eigen::Index a = b ^ (Eigen::Index{1} << (n - i)) ^ (Eigen::Index{1} << (n - j));
                // X_i X_j flips both bits with amplitude 1; Y_i Y_j gives -1 when the
                // bits agree and +1 when they differ.
                const double yy = excited(b, i, n) == excited(b, j, n) ? -1.0 : 1.0;
                h(a, b) += jij / 4.0 *
                           ((1.0 + spec.coupling.gamma) + (1.0 - spec.coupling.gamma) * yy);
            }
        }
    }
    return h;
}

} // namespace

ProtocolTrace brute_force_oracle(const ChainSpec& spec) {
    spec.validate();
    if (spec.num_sites > kOracleMaxSites || spec.rounds > kOracleMaxRounds) {
        throw CapacityError("brute-force oracle is limited to L <= 4 and N <= 5");
    }
    const int n = spec.num_sites;
    const int measured = spec.measured_site.value();
    const Eigen::Index dim = Eigen::Index{1} << n;

    const ComplexMatrix generator = Complex(0.0, -spec.time_step) * oracle_hamiltonian(spec);
    const ComplexMatrix unitary = generator.exp();

    ComplexMatrix projector = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix rho0 = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
        if (!excited(s, measured, n)) projector(s, s) = 1.0;
        double weight = 1.0;
        for (int i = 1; i <= n; ++i) {
            if (i == measured) {
                weight *= excited(s, i, n) ? 0.0 : 1.0;
            } else {
                const double x = spec.beta * spec.fields[i - 1];
                const double pg = std::exp(0.5 * x) / (std::exp(0.5 * x) + std::exp(-0.5 * x));
                weight *= excited(s, i, n) ? 1.0 - pg : pg;
            }
        }
        rho0(s, s) = weight;
    }

    const ComplexMatrix step = projector * unitary;
    ComplexMatrix power = ComplexMatrix::Identity(dim, dim);
    std::vector<double> probabilities;
    std::vector<std::vector<std::optional<double>>> fidelities;
    ComplexMatrix rho;
    for (std::size_t round = 1; round <= spec.rounds; ++round) {
        power = step * power;
        const ComplexMatrix unnormalized = power * rho0 * power.adjoint();
        const double p = unnormalized.trace().real();
        if (!(p > tol::kZeroBranch)) throw ZeroBranchError(round, p);
        rho = unnormalized / p;
        probabilities.push_back(p);
        std::vector<std::optional<double>> row(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) {
            if (i == measured) continue;
            double f = 0.0;
            for (Eigen::Index s = 0; s < dim; ++s) {
                if (!excited(s, i, n)) f += rho(s, s).real();
            }
            row[i - 1] = f;
        }
        fidelities.push_back(std::move(row));
    }
    rho = 0.5 * (rho + rho.adjoint());
    return ProtocolTrace{n, spec.measured_site, spec.rounds, std::move(probabilities),
                         std::move(fidelities), DensityOperator(rho, n)};
}

} // namespace qcool
