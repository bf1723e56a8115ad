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

#include "qcool_cli/execute.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "qcool/observables.hpp"
#include "qcool/protocol.hpp"
#include "qcool_cli/table_io.hpp"

namespace qcool::cli {

namespace {

SweepTable single_run_table(const ChainSpec& spec, std::string& details) {
    const ProtocolTrace trace = run_protocol(spec);
    SweepTable table;
    table.axis_names = {"N"};
    table.columns = {"N", "p_N"};
    std::vector<Cell> row{static_cast<double>(spec.rounds), trace.cumulative_probability.back()};
    details = " p=" + format_cell(row[1]);
    for (int site = 1; site <= spec.num_sites; ++site) {
        if (site == spec.measured_site.value()) continue;
        const std::string name = "F_site_" + std::to_string(site);
        table.columns.push_back(name);
        row.push_back(trace.site_fidelities.back()[site - 1]);
        details += " " + name + "=" + format_cell(row.back());
    }
    if (spec.num_sites >= 3) {
        table.columns.emplace_back("sigma_L");
        row.push_back(entanglement_distribution(trace.final_state, spec.measured_site));
        details += " sigma_L=" + format_cell(row.back());
    }
    table.rows.push_back(std::move(row));
    table.row_errors.emplace_back();
    return table;
}

} // namespace

Outcome run_experiment(const RunConfig& config) {
    SweepOptions options;
    options.threshold = config.threshold;
    options.round_cap = config.round_cap;
    options.threads = config.threads;
    const ChainSpec& spec = config.spec;

    Outcome outcome;
    KeyValues extra;
    switch (config.command) {
    case Command::ScanJ:
        outcome.table = scan_interaction(spec, config.j_grid, options);
        break;
    case Command::ScanN:
        outcome.table = scan_rounds(spec, spec.rounds, options);
        break;
    case Command::ScanBeta:
        outcome.table = threshold_rounds(spec, config.beta_grid, config.alphas, options);
        break;
    case Command::ScanPosition: {
        std::vector<SiteIndex> positions;
        for (int r : config.positions) positions.emplace_back(r);
        outcome.table = position_scan(spec, positions, options);
        break;
    }
    case Command::ProbScaling: {
        const ScalingFit fit = probability_scaling(spec, config.l_range, options);
        outcome.table = scaling_table(spec, fit, config.l_range, options);
        extra = {{"fit_slope", format_exact(fit.slope)},
                 {"fit_intercept", format_exact(fit.intercept)},
                 {"fit_r_squared", format_exact(fit.r_squared)}};
        if (!fit.excluded_sizes.empty()) {
            std::string excluded;
            for (int size : fit.excluded_sizes) {
                excluded += (excluded.empty() ? "" : ",") + std::to_string(size);
            }
            extra.emplace_back("excluded_L", excluded);
        }
        outcome.details = " slope=" + format_cell(fit.slope) +
                          " intercept=" + format_cell(fit.intercept) +
                          " r_squared=" + format_cell(fit.r_squared);
        break;
    }
    case Command::EntTrace:
        outcome.table = entanglement_trace(spec, spec.rounds, options);
        break;
    case Command::SingleRun:
        outcome.table = single_run_table(spec, outcome.details);
        break;
    }

    KeyValues metadata = serialize(config);
    metadata.emplace_back("schema_version", kSchemaVersion);
    metadata.emplace_back("engine", kEngineVersion);
    for (auto& entry : extra) metadata.push_back(std::move(entry));
    outcome.table.metadata = std::move(metadata);
    return outcome;
}

int execute(const RunConfig& config, std::ostream& summary, std::ostream& diagnostics) {
    ensure_writable(config.output_path);
    const auto start = std::chrono::steady_clock::now();
    const Outcome outcome = run_experiment(config);
    write_table(outcome.table, config.output_path, config.format);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::size_t failed = 0;
    for (std::size_t i = 0; i < outcome.table.row_errors.size(); ++i) {
        if (outcome.table.row_errors[i].empty()) continue;
        ++failed;
        diagnostics << "qcool: row " << i + 1 << ": " << outcome.table.row_errors[i] << '\n';
    }
    summary << "qcool " << command_name(config.command) << ": " << outcome.table.rows.size()
            << " rows written to "
            << (config.output_path.empty() ? std::string("<stdout>") : config.output_path)
            << " in " << format_cell(std::round(seconds * 1000.0) / 1000.0) << " s";
    if (failed) summary << " (" << failed << " rows failed)";
    summary << outcome.details << '\n';
    return failed ? 1 : 0;
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig config = parse_config(argc, argv);
        // Keep standard output clean for the artifact when no path is given.
        return execute(config, config.output_path.empty() ? err : out, err);
    } catch (const HelpRequested& help) {
        out << help.what();
        return 0;
    } catch (const IoError& e) {
        err << "qcool: " << e.what() << '\n';
        return 3;
    } catch (const ParseError& e) {
        err << "qcool: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        err << "qcool: " << e.what() << '\n';
        return 2;
    } catch (const ArgumentError& e) {
        err << "qcool: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "qcool: " << e.what() << '\n';
        return 4;
    }
}

} // namespace qcool::cli
