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

#include "qcool/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <numeric>
#include <thread>

#include "qcool/protocol.hpp"

namespace qcool {

namespace {

// Runs task(i) for i in [0, count) on up to `threads` workers. Tasks write
// only to their own slot, so the result is independent of scheduling.
template <class Task>
void parallel_for(std::size_t count, unsigned threads, Task&& task) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(threads, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) task(i);
        });
    }
}

std::vector<std::string> unmeasured_fidelity_columns(const ChainSpec& spec) {
    std::vector<std::string> out;
    for (int site = 1; site <= spec.num_sites; ++site) {
        if (site != spec.measured_site.value()) out.push_back("F_site_" + std::to_string(site));
    }
    return out;
}

void append_unmeasured(std::vector<Cell>& row, const std::vector<std::optional<double>>& fidelities,
                       const ChainSpec& spec) {
    for (int site = 1; site <= spec.num_sites; ++site) {
        if (site != spec.measured_site.value()) row.push_back(fidelities[site - 1]);
    }
}

std::string join_numbers(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_exact(values[i]);
    }
    return out;
}

struct RowOutcome {
    std::vector<Cell> cells;
    std::string error;
};

SweepTable assemble(std::vector<std::string> axes, std::vector<std::string> columns,
                    std::vector<RowOutcome> outcomes,
                    std::vector<std::pair<std::string, std::string>> metadata) {
    SweepTable table;
    table.axis_names = std::move(axes);
    table.columns = std::move(columns);
    table.metadata = std::move(metadata);
    for (auto& outcome : outcomes) {
        outcome.cells.resize(table.columns.size());
        table.rows.push_back(std::move(outcome.cells));
        table.row_errors.push_back(std::move(outcome.error));
    }
    return table;
}

} // namespace

std::size_t SweepTable::column_index(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw ArgumentError("no column named '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

Cell SweepTable::value(std::size_t row, const std::string& name) const {
    if (row >= rows.size()) throw IndexError("row " + std::to_string(row) + " outside the table");
    return rows[row][column_index(name)];
}

bool SweepTable::has_errors() const {
    return std::any_of(row_errors.begin(), row_errors.end(),
                       [](const std::string& e) { return !e.empty(); });
}

std::string format_exact(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw ArgumentError("line fit needs at least two (x, y) pairs");
    }
    const double n = static_cast<double>(x.size());
    const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mean_x) * (x[i] - mean_x);
        sxy += (x[i] - mean_x) * (y[i] - mean_y);
        syy += (y[i] - mean_y) * (y[i] - mean_y);
    }
    if (sxx == 0.0) throw ArgumentError("line fit needs two distinct x values");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    double residual = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (fit.slope * x[i] + fit.intercept);
        residual += e * e;
    }
    fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - residual / syy, 0.0, 1.0);
    return fit;
}

CoolingRun run_until_cooled(const ChainSpec& spec, double threshold, std::size_t round_cap) {
    if (!(threshold > 0.5 && threshold <= 1.0)) {
        throw ArgumentError("cooling threshold must lie in (0.5, 1]");
    }
    ProtocolRunner runner(spec);
    CoolingRun run;
    run.first_crossing.assign(static_cast<std::size_t>(spec.num_sites), std::nullopt);
    std::size_t pending = static_cast<std::size_t>(spec.num_sites) - 1;
    while (runner.rounds_completed() < round_cap && pending > 0) {
        runner.advance();
        for (int site = 1; site <= spec.num_sites; ++site) {
            if (site == spec.measured_site.value() || run.first_crossing[site - 1]) continue;
            if (runner.ground_population(SiteIndex{site}) >= threshold) {
                run.first_crossing[site - 1] = runner.rounds_completed();
                --pending;
            }
        }
    }
    run.rounds_run = runner.rounds_completed();
    if (pending == 0) run.all_cooled_round = runner.rounds_completed();
    run.probability = runner.cumulative_probability();
    run.fidelities = runner.site_fidelities();
    return run;
}

ChainSpec resized(const ChainSpec& base, int num_sites) {
    ChainSpec spec = base;
    spec.num_sites = num_sites;
    spec.fields.assign(static_cast<std::size_t>(std::max(num_sites, 0)),
                       base.fields.empty() ? 1.0 : base.fields.front());
    return spec;
}

std::vector<std::pair<std::string, std::string>> spec_metadata(const ChainSpec& spec,
                                                               double threshold) {
    return {
        {"L", std::to_string(spec.num_sites)},
        {"omega", join_numbers(spec.fields)},
        {"J", format_exact(spec.coupling.J)},
        {"alpha", format_exact(spec.coupling.alpha)},
        {"gamma", format_exact(spec.coupling.gamma)},
        {"beta", format_exact(spec.beta)},
        {"t", format_exact(spec.time_step)},
        {"r", std::to_string(spec.measured_site.value())},
        {"N", std::to_string(spec.rounds)},
        {"threshold", format_exact(threshold)},
        {"engine", kEngineVersion},
    };
}

SweepTable scan_interaction(const ChainSpec& base, const std::vector<double>& j_grid,
                            const SweepOptions& options) {
    if (j_grid.empty()) throw ArgumentError("interaction grid is empty");
    base.validate();
    std::vector<std::string> columns{"J", "p_N"};
    for (auto& c : unmeasured_fidelity_columns(base)) columns.push_back(c);

    std::vector<RowOutcome> outcomes(j_grid.size());
    parallel_for(j_grid.size(), options.threads, [&](std::size_t i) {
        RowOutcome& out = outcomes[i];
        out.cells.push_back(j_grid[i]);
        try {
            ChainSpec spec = base;
            spec.coupling.J = j_grid[i];
            ProtocolRunner runner(spec);
            for (std::size_t n = 0; n < spec.rounds; ++n) runner.advance();
            out.cells.push_back(runner.cumulative_probability());
            append_unmeasured(out.cells, runner.site_fidelities(), spec);
        } catch (const Error& e) {
            out.error = e.what();
        }
    });
    return assemble({"J"}, std::move(columns), std::move(outcomes),
                    spec_metadata(base, options.threshold));
}

SweepTable scan_rounds(const ChainSpec& base, std::size_t n_max, const SweepOptions& options) {
    if (n_max < 1) throw ArgumentError("n_max must be >= 1");
    ChainSpec spec = base;
    spec.rounds = n_max;
    spec.validate();
    std::vector<std::string> columns{"N", "p_N"};
    for (auto& c : unmeasured_fidelity_columns(spec)) columns.push_back(c);

    std::vector<RowOutcome> outcomes(n_max);
    ProtocolRunner runner(spec);
    std::string failure;
    for (std::size_t n = 1; n <= n_max; ++n) {
        RowOutcome& out = outcomes[n - 1];
        out.cells.push_back(static_cast<double>(n));
        if (failure.empty()) {
            try {
                runner.advance();
                out.cells.push_back(runner.cumulative_probability());
                append_unmeasured(out.cells, runner.site_fidelities(), spec);
                continue;
            } catch (const Error& e) {
                failure = e.what();
            }
        }
        out.error = failure;
    }
    return assemble({"N"}, std::move(columns), std::move(outcomes),
                    spec_metadata(spec, options.threshold));
}

ScalingFit probability_scaling(const ChainSpec& base, const std::vector<int>& l_range,
                               const SweepOptions& options) {
    if (l_range.empty()) throw ArgumentError("system-size range is empty");
    std::vector<std::optional<CoolingRun>> runs(l_range.size());
    std::vector<std::string> errors(l_range.size());
    for (int size : l_range) resized(base, size).validate();
    parallel_for(l_range.size(), options.threads, [&](std::size_t i) {
        try {
            runs[i] = run_until_cooled(resized(base, l_range[i]), options.threshold,
                                       options.round_cap);
        } catch (const Error& e) {
            errors[i] = e.what();
        }
    });

    ScalingFit fit;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < l_range.size(); ++i) {
        if (!runs[i] || !runs[i]->all_cooled_round) {
            fit.excluded_sizes.push_back(l_range[i]);
            continue;
        }
        const double log_p = std::log2(runs[i]->probability);
        fit.points.emplace_back(l_range[i], log_p);
        fit.rounds_to_cool.push_back(*runs[i]->all_cooled_round);
        xs.push_back(l_range[i]);
        ys.push_back(log_p);
    }
    if (xs.size() < 2) {
        throw ArgumentError("probability scaling needs at least two sizes that cool");
    }
    const LinearFit line = fit_line(xs, ys);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
    return fit;
}

SweepTable scaling_table(const ChainSpec& base, const ScalingFit& fit,
                         const std::vector<int>& l_range, const SweepOptions& options) {
    std::vector<RowOutcome> outcomes;
    for (int size : l_range) {
        RowOutcome out;
        out.cells.push_back(static_cast<double>(size));
        const auto it = std::find_if(fit.points.begin(), fit.points.end(),
                                     [size](const auto& p) { return p.first == size; });
        if (it == fit.points.end()) {
            out.error = "L = " + std::to_string(size) + " did not cool within " +
                        std::to_string(options.round_cap) + " rounds";
        } else {
            const auto k = static_cast<std::size_t>(it - fit.points.begin());
            out.cells.push_back(std::exp2(it->second));
            out.cells.push_back(it->second);
            out.cells.push_back(static_cast<double>(fit.rounds_to_cool[k]));
        }
        outcomes.push_back(std::move(out));
    }
    auto metadata = spec_metadata(base, options.threshold);
    metadata.emplace_back("round_cap", std::to_string(options.round_cap));
    metadata.emplace_back("fit_slope", format_exact(fit.slope));
    metadata.emplace_back("fit_intercept", format_exact(fit.intercept));
    metadata.emplace_back("fit_r_squared", format_exact(fit.r_squared));
    return assemble({"L"}, {"L", "p_N", "log2_p_N", "N_cool"}, std::move(outcomes),
                    std::move(metadata));
}

SweepTable threshold_rounds(const ChainSpec& base, const std::vector<double>& beta_grid,
                            const std::vector<double>& alphas, const SweepOptions& options) {
    if (beta_grid.empty() || alphas.empty()) throw ArgumentError("beta and alpha grids must be nonempty");
    base.validate();
    std::vector<std::string> columns{"beta", "alpha", "p_N"};
    for (auto& c : unmeasured_fidelity_columns(base)) columns.push_back(c);
    columns.emplace_back("N_cool");

    const std::size_t count = beta_grid.size() * alphas.size();
    std::vector<RowOutcome> outcomes(count);
    parallel_for(count, options.threads, [&](std::size_t i) {
        const double beta = beta_grid[i / alphas.size()];
        const double alpha = alphas[i % alphas.size()];
        RowOutcome& out = outcomes[i];
        out.cells = {beta, alpha};
        try {
            ChainSpec spec = base;
            spec.beta = beta;
            spec.coupling.alpha = alpha;
            const CoolingRun run = run_until_cooled(spec, options.threshold, options.round_cap);
            out.cells.push_back(run.probability);
            append_unmeasured(out.cells, run.fidelities, spec);
            if (run.all_cooled_round) {
                out.cells.push_back(static_cast<double>(*run.all_cooled_round));
            } else {
                out.error = "not cooled within " + std::to_string(options.round_cap) + " rounds";
            }
        } catch (const Error& e) {
            out.error = e.what();
        }
    });
    auto metadata = spec_metadata(base, options.threshold);
    metadata.emplace_back("round_cap", std::to_string(options.round_cap));
    return assemble({"beta", "alpha"}, std::move(columns), std::move(outcomes), std::move(metadata));
}

SweepTable position_scan(const ChainSpec& base, const std::vector<SiteIndex>& positions,
                         const SweepOptions& options) {
    if (positions.empty()) throw ArgumentError("position list is empty");
    base.validate();
    for (SiteIndex r : positions) r.check(base.num_sites);
    const int n = base.num_sites;
    std::vector<std::string> columns{"r", "p_N"};
    for (int site = 1; site <= n; ++site) columns.push_back("F_site_" + std::to_string(site));
    for (int site = 1; site <= n; ++site) columns.push_back("cooled_site_" + std::to_string(site));
    columns.emplace_back("cooled_count");
    const bool with_sigma = n >= 3;
    if (with_sigma) columns.emplace_back("sigma_L");

    std::vector<RowOutcome> outcomes(positions.size());
    parallel_for(positions.size(), options.threads, [&](std::size_t i) {
        RowOutcome& out = outcomes[i];
        out.cells.push_back(static_cast<double>(positions[i].value()));
        try {
            ChainSpec spec = base;
            spec.measured_site = positions[i];
            const ProtocolTrace trace = run_protocol(spec);
            const CooledReport report = cooled_sites(trace, options.threshold);
            out.cells.push_back(trace.cumulative_probability.back());
            for (const auto& f : trace.site_fidelities.back()) out.cells.push_back(f);
            for (int site = 1; site <= n; ++site) {
                if (site == spec.measured_site.value()) {
                    out.cells.push_back(std::nullopt);
                } else {
                    out.cells.push_back(report.is_cooled(SiteIndex{site}) ? 1.0 : 0.0);
                }
            }
            out.cells.push_back(static_cast<double>(report.cooled_sites.size()));
            if (with_sigma) {
                out.cells.push_back(entanglement_distribution(trace.final_state, spec.measured_site));
            }
        } catch (const Error& e) {
            out.error = e.what();
        }
    });
    return assemble({"r"}, std::move(columns), std::move(outcomes),
                    spec_metadata(base, options.threshold));
}

SweepTable entanglement_trace(const ChainSpec& base, std::size_t n_max,
                              const SweepOptions& options) {
    if (n_max < 1) throw ArgumentError("n_max must be >= 1");
    ChainSpec spec = base;
    spec.rounds = n_max;
    spec.validate();
    if (spec.num_sites < 3) throw ArgumentError("entanglement trace needs L >= 3");
    std::vector<std::string> columns{"N", "p_N"};
    for (auto& c : unmeasured_fidelity_columns(spec)) columns.push_back(c);
    columns.emplace_back("sigma_L");

    std::vector<RowOutcome> outcomes(n_max + 1);
    ProtocolRunner runner(spec);
    auto record = [&](RowOutcome& out) {
        out.cells.push_back(runner.cumulative_probability());
        append_unmeasured(out.cells, runner.site_fidelities(), spec);
        out.cells.push_back(
            entanglement_distribution(runner.state_matrix(), spec.num_sites, spec.measured_site));
    };
    outcomes[0].cells.push_back(0.0);
    record(outcomes[0]);
    std::string failure;
    for (std::size_t n = 1; n <= n_max; ++n) {
        RowOutcome& out = outcomes[n];
        out.cells.push_back(static_cast<double>(n));
        if (failure.empty()) {
            try {
                runner.advance();
                record(out);
                continue;
            } catch (const Error& e) {
                failure = e.what();
            }
        }
        out.error = failure;
    }
    return assemble({"N"}, std::move(columns), std::move(outcomes),
                    spec_metadata(spec, options.threshold));
}

} // namespace qcool
