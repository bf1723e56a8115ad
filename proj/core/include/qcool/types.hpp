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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "qcool/errors.hpp"

namespace qcool {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest supported Hilbert-space dimension (L <= 10).
inline constexpr Eigen::Index kMaxDimension = 1024;
inline constexpr int kMaxSites = 10;

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPositivity = 1e-10;
inline constexpr double kPureNorm = 1e-12;
inline constexpr double kIdempotent = 1e-10;
inline constexpr double kZeroBranch = 1e-14;
} // namespace tol

/// 1-based chain position; site 1 is the leftmost tensor factor.
class SiteIndex {
public:
    constexpr explicit SiteIndex(int value) : value_(value) {}

    constexpr int value() const noexcept { return value_; }
    /// Throws IndexError unless 1 <= value <= num_sites.
    void check(int num_sites) const;

    friend constexpr bool operator==(SiteIndex, SiteIndex) = default;
    friend constexpr auto operator<=>(SiteIndex, SiteIndex) = default;

private:
    int value_;
};

/// Number of sites L such that 2^L == dim; throws ArgumentError otherwise.
int sites_for_dimension(Eigen::Index dim);

/// Bit of basis index `index` that belongs to `site` in an L-site register.
inline int site_bit(Eigen::Index index, int site, int num_sites) {
    return static_cast<int>((index >> (num_sites - site)) & 1);
}

// Entrywise checks (max-abs norms).
double max_abs(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);
double unitarity_defect(const ComplexMatrix& u);
bool all_finite(const ComplexMatrix& m);

/// Trace-one positive Hermitian operator on L qubits.
///
/// The constructor checks Hermiticity and trace (1e-10) and the minimum
/// eigenvalue (>= -1e-10); it throws ValidationError on failure.
class DensityOperator {
public:
    DensityOperator(ComplexMatrix matrix, int num_sites);

    /// Infers L from the matrix dimension.
    explicit DensityOperator(ComplexMatrix matrix);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    int num_sites() const noexcept { return num_sites_; }
    Eigen::Index dimension() const noexcept { return matrix_.rows(); }

    /// Eigenvalues in ascending order.
    Eigen::VectorXd eigenvalues() const;

private:
    ComplexMatrix matrix_;
    int num_sites_;
};

/// Unit-norm state vector on L qubits.
class PureState {
public:
    explicit PureState(ComplexVector amplitudes);

    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
    int num_sites() const noexcept { return num_sites_; }

    DensityOperator projector() const;

private:
    ComplexVector amplitudes_;
    int num_sites_;
};

} // namespace qcool
