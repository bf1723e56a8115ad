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
#include <string>
#include <utility>
#include <vector>

#include "qcool/model.hpp"
#include "qcool/observables.hpp"

namespace qcool {

inline constexpr const char* kEngineVersion = "qcool 1.0.0";
inline constexpr std::size_t kDefaultRoundCap = 2000;

using Cell = std::optional<double>;

/// Rectangular result grid. `columns` starts with the axis names, followed by
/// observables; absent values are nullopt.
struct SweepTable {
    std::vector<std::string> axis_names;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Ordered key/value metadata (spec fields, threshold, engine version, ...).
    std::vector<std::pair<std::string, std::string>> metadata;
    /// Per-row failure message; empty string for rows that completed.
    std::vector<std::string> row_errors;

    /// Throws ArgumentError for an unknown column.
    std::size_t column_index(const std::string& name) const;
    Cell value(std::size_t row, const std::string& name) const;
    bool has_errors() const;
};

struct SweepOptions {
    double threshold = kDefaultCoolingThreshold;
    /// Round cap for sweeps that run until every site is cooled.
    std::size_t round_cap = kDefaultRoundCap;
    /// Worker threads for independent grid points; 0 = hardware concurrency.
    unsigned threads = 0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Unweighted least squares y = slope x + intercept; needs >= 2 distinct x.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    /// (L, log2 p) at the all-cooled round, cooled sizes only.
    std::vector<std::pair<int, double>> points;
    /// All-cooled round per entry of `points`.
    std::vector<std::size_t> rounds_to_cool;
    /// Sizes that never cooled within the round cap.
    std::vector<int> excluded_sizes;
};

/// Outcome of running one spec until every unmeasured site has crossed the
/// threshold, or until the cap.
struct CoolingRun {
    /// Max over unmeasured sites of the first crossing; nullopt if capped.
    std::optional<std::size_t> all_cooled_round;
    std::vector<std::optional<std::size_t>> first_crossing;
    /// Probability and fidelities at all_cooled_round, or at the cap.
    double probability = 1.0;
    std::vector<std::optional<double>> fidelities;
    std::size_t rounds_run = 0;
};

CoolingRun run_until_cooled(const ChainSpec& spec, double threshold, std::size_t round_cap);

/// `base` resized to `num_sites` with uniform fields equal to base.fields[0].
ChainSpec resized(const ChainSpec& base, int num_sites);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_exact(double value);

/// Spec fields, threshold and engine version as ordered metadata.
std::vector<std::pair<std::string, std::string>> spec_metadata(const ChainSpec& spec,
                                                               double threshold);

/// One protocol run per J; final-round p_N and fidelities.
SweepTable scan_interaction(const ChainSpec& base, const std::vector<double>& j_grid,
                            const SweepOptions& options = {});

/// One run of n_max rounds; a row per round.
SweepTable scan_rounds(const ChainSpec& base, std::size_t n_max,
                       const SweepOptions& options = {});

/// log2 p at the all-cooled round against L.
ScalingFit probability_scaling(const ChainSpec& base, const std::vector<int>& l_range,
                               const SweepOptions& options = {});
/// One row per requested L: p_N, log2 p_N and the all-cooled round (empty when excluded).
SweepTable scaling_table(const ChainSpec& base, const ScalingFit& fit,
                         const std::vector<int>& l_range, const SweepOptions& options = {});

/// N^alpha_beta for every (beta, alpha), beta-major.
SweepTable threshold_rounds(const ChainSpec& base, const std::vector<double>& beta_grid,
                            const std::vector<double>& alphas, const SweepOptions& options = {});

/// One run per measured position; final fidelities, per-site cooled flags and
/// Sigma_L of the final state (L >= 3).
SweepTable position_scan(const ChainSpec& base, const std::vector<SiteIndex>& positions,
                         const SweepOptions& options = {});

/// Sigma_L after each round n = 0..n_max (n = 0 is the initial state).
SweepTable entanglement_trace(const ChainSpec& base, std::size_t n_max,
                              const SweepOptions& options = {});

} // namespace qcool
