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

#include <cmath>
#include <random>
#include <string>

#include "qcool/model.hpp"
#include "qcool/types.hpp"

namespace qcool::testing {

inline constexpr std::uint64_t kSeed = 0x5eed'c001'2026ULL;

/// Computational basis ket from a bit string, site 1 leftmost ("100" = |100>).
inline ComplexVector ket(const std::string& bits) {
    Eigen::Index index = 0;
    for (char b : bits) index = (index << 1) | (b == '1' ? 1 : 0);
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << bits.size());
    v(index) = 1.0;
    return v;
}

inline ComplexMatrix projector(const std::string& bits) {
    const ComplexVector v = ket(bits);
    return v * v.adjoint();
}

inline ComplexMatrix random_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> normal;
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(normal(rng), normal(rng));
    }
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
    const ComplexMatrix g = random_gaussian(rng, dim, dim);
    return (g + g.adjoint()) / 2.0;
}

/// Random full-rank (or rank-limited) density matrix on `num_sites` qubits.
inline ComplexMatrix random_density(std::mt19937_64& rng, int num_sites, Eigen::Index rank = 0) {
    const Eigen::Index dim = Eigen::Index{1} << num_sites;
    const ComplexMatrix g = random_gaussian(rng, dim, rank > 0 ? rank : dim);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace();
    return (rho + rho.adjoint()) / 2.0;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

struct SpecRanges {
    int min_sites = 2;
    int max_sites = 4;
    std::size_t max_rounds = 5;
    bool random_gamma = true;
    bool random_fields = true;
};

/// Random valid chain spec; every field drawn independently.
inline ChainSpec random_spec(std::mt19937_64& rng, const SpecRanges& ranges = {}) {
    ChainSpec spec = ChainSpec::uniform(uniform_int(rng, ranges.min_sites, ranges.max_sites));
    if (ranges.random_fields) {
        for (double& omega : spec.fields) omega = uniform(rng, 0.3, 2.0);
    }
    spec.coupling.J = uniform(rng, -6.0, 6.0);
    spec.coupling.alpha = uniform(rng, 0.5, 4.0);
    spec.coupling.gamma = ranges.random_gamma ? uniform(rng, 0.0, 1.0) : 0.0;
    spec.beta = uniform(rng, 0.0, 2.0);
    spec.measured_site = SiteIndex{uniform_int(rng, 1, spec.num_sites)};
    spec.time_step = uniform(rng, 0.2, 2.0);
    spec.rounds = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(ranges.max_rounds)));
    return spec;
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs(a - b); }

} // namespace qcool::testing
