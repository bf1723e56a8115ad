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

#include "qcool/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qcool {

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

ComplexMatrix z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

ComplexMatrix ground_projector() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 1) = 1.0;
    return m;
}
} // namespace pauli

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index rows = a.rows() * b.rows();
    const Eigen::Index cols = a.cols() * b.cols();
    if (rows > kMaxDimension || cols > kMaxDimension) {
        throw CapacityError("Kronecker product " + std::to_string(rows) + "x" +
                            std::to_string(cols) + " exceeds the supported dimension");
    }
    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix embed_single_site(const ComplexMatrix& op, SiteIndex site, int num_sites) {
    if (op.rows() != 2 || op.cols() != 2) throw ArgumentError("single-site operator must be 2x2");
    if (num_sites < 1 || num_sites > kMaxSites) {
        throw CapacityError("chain length " + std::to_string(num_sites) + " is not supported");
    }
    site.check(num_sites);
    const Eigen::Index left = Eigen::Index{1} << (site.value() - 1);
    const Eigen::Index right = Eigen::Index{1} << (num_sites - site.value());
    return kron(kron(ComplexMatrix::Identity(left, left), op),
                ComplexMatrix::Identity(right, right));
}

SpectralPropagator::SpectralPropagator(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw ValidationError("generator must be square");
    if (!all_finite(h)) throw ValidationError("generator has non-finite entries");
    if (hermiticity_defect(h) > tol::kHermitian) throw ValidationError("generator is not Hermitian");
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) throw ValidationError("eigendecomposition failed");
    energies_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

ComplexMatrix SpectralPropagator::at(double t) const {
    const ComplexVector phases = (energies_.cast<Complex>() * Complex(0.0, -t)).array().exp();
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

ComplexMatrix hermitian_evolution(const ComplexMatrix& h, double t) {
    return SpectralPropagator(h).at(t);
}

namespace {

std::vector<int> sorted_keep(std::span<const SiteIndex> keep, int num_sites) {
    if (keep.empty()) throw ArgumentError("partial trace needs at least one kept site");
    std::vector<int> sites;
    sites.reserve(keep.size());
    for (SiteIndex s : keep) {
        s.check(num_sites);
        sites.push_back(s.value());
    }
    std::sort(sites.begin(), sites.end());
    if (std::adjacent_find(sites.begin(), sites.end()) != sites.end()) {
        throw ArgumentError("partial trace keep set has duplicate sites");
    }
    return sites;
}

// Full-register index with `kept_bits` scattered onto `kept` and `traced_bits`
// onto the remaining sites, both in ascending site order.
Eigen::Index compose_index(Eigen::Index kept_bits, Eigen::Index traced_bits,
                           const std::vector<int>& kept, int num_sites) {
    Eigen::Index index = 0;
    int k = static_cast<int>(kept.size()) - 1;
    int traced_pos = 0;
    for (int site = num_sites; site >= 1; --site) {
        const int shift = num_sites - site;
        Eigen::Index bit;
        if (k >= 0 && kept[k] == site) {
            bit = (kept_bits >> (static_cast<int>(kept.size()) - 1 - k)) & 1;
            --k;
        } else {
            bit = (traced_bits >> traced_pos) & 1;
            ++traced_pos;
        }
        index |= bit << shift;
    }
    return index;
}

} // namespace

ComplexMatrix partial_trace(const ComplexMatrix& rho, int num_sites,
                            std::span<const SiteIndex> keep) {
    const Eigen::Index dim = Eigen::Index{1} << num_sites;
    if (rho.rows() != dim || rho.cols() != dim) {
        throw ArgumentError("operator dimension does not match " + std::to_string(num_sites) +
                            " sites");
    }
    const std::vector<int> kept = sorted_keep(keep, num_sites);
    const Eigen::Index kept_dim = Eigen::Index{1} << kept.size();
    const Eigen::Index traced_dim = dim / kept_dim;

    Eigen::Matrix<Eigen::Index, Eigen::Dynamic, Eigen::Dynamic> index(kept_dim, traced_dim);
    for (Eigen::Index a = 0; a < kept_dim; ++a) {
        for (Eigen::Index t = 0; t < traced_dim; ++t) {
            index(a, t) = compose_index(a, t, kept, num_sites);
        }
    }

    ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
    for (Eigen::Index a = 0; a < kept_dim; ++a) {
        for (Eigen::Index b = 0; b < kept_dim; ++b) {
            Complex sum = 0.0;
            for (Eigen::Index t = 0; t < traced_dim; ++t) sum += rho(index(a, t), index(b, t));
            out(a, b) = sum;
        }
    }
    return out;
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const SiteIndex> keep) {
    ComplexMatrix reduced = partial_trace(rho.matrix(), rho.num_sites(), keep);
    const int kept_sites = sites_for_dimension(reduced.rows());
    return DensityOperator(std::move(reduced), kept_sites);
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, SiteIndex transposed_site) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw ArgumentError("partial transpose expects a two-qubit operator");
    }
    transposed_site.check(2);
    const int shift = 2 - transposed_site.value();
    const Eigen::Index mask = Eigen::Index{1} << shift;
    ComplexMatrix out(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) {
            const Eigen::Index row = (i & ~mask) | (j & mask);
            const Eigen::Index col = (j & ~mask) | (i & mask);
            out(row, col) = rho(i, j);
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const DensityOperator& rho, SiteIndex transposed_site) {
    if (rho.num_sites() != 2) throw ArgumentError("partial transpose expects a two-qubit state");
    return partial_transpose(rho.matrix(), transposed_site);
}

ProjectionResult project_and_weight(const DensityOperator& rho, const ComplexMatrix& projector) {
    if (projector.rows() != rho.dimension() || projector.cols() != rho.dimension()) {
        throw ArgumentError("projector dimension does not match the state");
    }
    if (hermiticity_defect(projector) > tol::kHermitian ||
        max_abs(projector * projector - projector) > tol::kIdempotent) {
        throw ValidationError("operator is not an orthogonal projector");
    }
    ComplexMatrix branch = projector * rho.matrix() * projector;
    const double probability = branch.trace().real();
    if (probability <= tol::kZeroBranch) throw ZeroBranchError(0, probability);
    branch /= probability;
    branch = 0.5 * (branch + branch.adjoint());
    return {DensityOperator(std::move(branch), rho.num_sites()), std::min(probability, 1.0)};
}

} // namespace qcool
