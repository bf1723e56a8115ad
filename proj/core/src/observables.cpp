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

#include "qcool/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qcool/linalg.hpp"

namespace qcool {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
    const Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * roots.cast<Complex>().asDiagonal() *
           solver.eigenvectors().adjoint();
}

// Indices of `values` ordered by decreasing modulus; ties keep solver order.
std::vector<Eigen::Index> by_modulus(const ComplexVector& values) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return std::abs(values(a)) > std::abs(values(b));
    });
    return order;
}

DensityOperator normalized_state(ComplexMatrix m, int num_sites) {
    m = hermitian_part(m);
    const double trace = m.trace().real();
    if (!(trace > tol::kZeroBranch)) throw ZeroBranchError(0, trace);
    return DensityOperator(m / trace, num_sites);
}

} // namespace

double ground_fidelity(const DensityOperator& qubit_state) {
    if (qubit_state.num_sites() != 1) throw ArgumentError("ground fidelity expects a one-qubit state");
    return std::clamp(qubit_state.matrix()(1, 1).real(), 0.0, 1.0);
}

double state_fidelity(const DensityOperator& a, const DensityOperator& b) {
    if (a.dimension() != b.dimension()) throw ArgumentError("fidelity operands differ in dimension");
    const ComplexMatrix root = psd_sqrt(a.matrix());
    const ComplexMatrix inner = root * b.matrix() * root;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(inner),
                                                        Eigen::EigenvaluesOnly);
    const double sum = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(sum * sum, 0.0, 1.0);
}

double log_negativity(const DensityOperator& two_qubit_state) {
    const ComplexMatrix transposed = partial_transpose(two_qubit_state, SiteIndex{2});
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(transposed),
                                                        Eigen::EigenvaluesOnly);
    const double trace_norm = solver.eigenvalues().cwiseAbs().sum();
    return std::max(0.0, std::log2(trace_norm));
}

SiteIndex nodal_site(SiteIndex measured_site) {
    return measured_site.value() >= 2 ? SiteIndex{measured_site.value() - 1}
                                      : SiteIndex{measured_site.value() + 1};
}

double entanglement_distribution(const ComplexMatrix& state, int num_sites,
                                 SiteIndex measured_site) {
    if (num_sites < 3) throw ArgumentError("entanglement distribution needs L >= 3");
    measured_site.check(num_sites);
    const SiteIndex nodal = nodal_site(measured_site);
    double total = 0.0;
    for (int i = 1; i <= num_sites; ++i) {
        if (i == measured_site.value() || i == nodal.value()) continue;
        const SiteIndex pair[] = {nodal, SiteIndex{i}};
        total += log_negativity(DensityOperator(partial_trace(state, num_sites, pair), 2));
    }
    return total;
}

double entanglement_distribution(const DensityOperator& state, SiteIndex measured_site) {
    return entanglement_distribution(state.matrix(), state.num_sites(), measured_site);
}

bool CooledReport::is_cooled(SiteIndex site) const {
    return std::find(cooled_sites.begin(), cooled_sites.end(), site) != cooled_sites.end();
}

bool CooledReport::all_cooled() const {
    return !rounds_to_cool.empty() && cooled_sites.size() + 1 == rounds_to_cool.size();
}

std::optional<std::size_t> CooledReport::all_cooled_round() const {
    if (!all_cooled()) return std::nullopt;
    std::size_t worst = 0;
    for (const auto& r : rounds_to_cool) {
        if (r) worst = std::max(worst, *r);
    }
    return worst;
}

CooledReport cooled_sites(const ProtocolTrace& trace, double threshold) {
    if (!(threshold > 0.5 && threshold <= 1.0)) {
        throw ArgumentError("cooling threshold must lie in (0.5, 1]");
    }
    CooledReport report;
    report.threshold = threshold;
    report.rounds_to_cool.assign(static_cast<std::size_t>(trace.num_sites), std::nullopt);
    for (int site = 1; site <= trace.num_sites; ++site) {
        if (site == trace.measured_site.value()) continue;
        for (std::size_t n = 0; n < trace.site_fidelities.size(); ++n) {
            const auto& f = trace.site_fidelities[n][site - 1];
            if (f && *f >= threshold) {
                report.rounds_to_cool[site - 1] = n + 1;
                report.cooled_sites.emplace_back(site);
                break;
            }
        }
    }
    return report;
}

SpectralPurificationReport dominant_conditional_eigenstate(const ConditionalMap& map,
                                                           const DensityOperator& initial,
                                                           std::size_t rounds) {
    const ComplexMatrix& m = map.matrix();
    if (initial.dimension() != m.rows()) {
        throw ArgumentError("initial state dimension does not match the conditional map");
    }
    const int num_sites = map.num_sites();

    Eigen::ComplexEigenSolver<ComplexMatrix> right(m);
    Eigen::ComplexEigenSolver<ComplexMatrix> left(m.adjoint());
    if (right.info() != Eigen::Success || left.info() != Eigen::Success) {
        throw ValidationError("eigendecomposition of the conditional map failed");
    }
    const auto right_order = by_modulus(right.eigenvalues());
    const auto left_order = by_modulus(left.eigenvalues());

    const double top = std::abs(right.eigenvalues()(right_order[0]));
    if (!(top > tol::kZeroBranch)) throw ZeroBranchError(0, top);
    const double second =
        right_order.size() > 1 ? std::abs(right.eigenvalues()(right_order[1])) : 0.0;

    std::size_t size = 0;
    while (size < right_order.size() &&
           std::abs(right.eigenvalues()(right_order[size])) >= top - kDegeneracyTolerance) {
        ++size;
    }
    const auto s = static_cast<Eigen::Index>(size);

    ComplexMatrix v(m.rows(), s);
    ComplexMatrix w(m.rows(), s);
    ComplexVector lambda(s);
    for (Eigen::Index k = 0; k < s; ++k) {
        v.col(k) = right.eigenvectors().col(right_order[k]);
        w.col(k) = left.eigenvectors().col(left_order[k]);
        lambda(k) = right.eigenvalues()(right_order[k]) / top;
    }
    // Pair each left vector with the right vector of the same eigenvalue.
    ComplexMatrix w_sorted(m.rows(), s);
    std::vector<bool> used(size, false);
    for (Eigen::Index k = 0; k < s; ++k) {
        Eigen::Index best = -1;
        double best_distance = INFINITY;
        for (Eigen::Index j = 0; j < s; ++j) {
            if (used[j]) continue;
            const Complex mu = std::conj(left.eigenvalues()(left_order[j])) / top;
            const double distance = std::abs(mu - lambda(k));
            if (distance < best_distance) {
                best_distance = distance;
                best = j;
            }
        }
        used[best] = true;
        w_sorted.col(k) = w.col(best);
    }

    const ComplexMatrix gram = w_sorted.adjoint() * v;
    Eigen::FullPivLU<ComplexMatrix> lu(gram);
    const bool defective = !lu.isInvertible() || lu.rcond() < 1e-10;

    SpectralPurificationReport report{top, top - second, size,
                                      DensityOperator(initial), top - second < kDegeneracyTolerance};
    if (defective) {
        report.degenerate = true;
        Eigen::ColPivHouseholderQR<ComplexMatrix> qr(v);
        qr.setThreshold(1e-8);
        const ComplexMatrix q =
            ComplexMatrix(qr.householderQ()).leftCols(std::max<Eigen::Index>(qr.rank(), 1));
        const ComplexMatrix projector = q * q.adjoint();
        report.predicted_state =
            normalized_state(projector * initial.matrix() * projector, num_sites);
        return report;
    }

    ComplexVector powers(s);
    for (Eigen::Index k = 0; k < s; ++k) {
        powers(k) = std::pow(lambda(k), static_cast<double>(rounds));
    }
    const ComplexMatrix restricted =
        v * powers.asDiagonal() * lu.inverse() * w_sorted.adjoint();
    report.predicted_state =
        normalized_state(restricted * initial.matrix() * restricted.adjoint(), num_sites);
    return report;
}

} // namespace qcool
