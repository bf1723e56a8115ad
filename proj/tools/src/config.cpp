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

#include "qcool_cli/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qcool/experiments.hpp"

namespace qcool::cli {

namespace {

constexpr std::pair<Command, const char*> kCommands[] = {
    {Command::ScanJ, "scan-j"},           {Command::ScanN, "scan-n"},
    {Command::ScanBeta, "scan-beta"},     {Command::ScanPosition, "scan-position"},
    {Command::ProbScaling, "prob-scaling"}, {Command::EntTrace, "ent-trace"},
    {Command::SingleRun, "single-run"},
};

// Keys accepted by build_config, in serialization order.
const std::vector<std::string> kKeys = {
    "command", "L",      "omega",   "J",         "alpha",     "gamma",     "beta",
    "t",       "r",      "N",       "threshold", "format",    "output",    "j_grid",
    "beta_grid", "alphas", "positions", "l_range", "round_cap", "threads",
};

// Informational keys written into artifact headers; accepted and ignored.
const std::set<std::string> kInformational = {
    "schema_version", "engine", "fit_slope", "fit_intercept", "fit_r_squared", "excluded_L",
};

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, sep)) out.push_back(trim(item));
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

double parse_real(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ParseError(key, "'" + text + "' is not a number");
    }
    if (!std::isfinite(value)) throw ParseError(key, "'" + text + "' is not finite");
    return value;
}

long long parse_integer(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ParseError(key, "'" + text + "' is not an integer");
    }
    return value;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        out += items[i];
    }
    return out;
}

template <class T>
std::string join_values(const std::vector<T>& values) {
    std::vector<std::string> items;
    for (const T& v : values) {
        if constexpr (std::is_floating_point_v<T>) {
            items.push_back(format_exact(v));
        } else {
            items.push_back(std::to_string(v));
        }
    }
    return join(items);
}

bool same_spec(const ChainSpec& a, const ChainSpec& b) {
    return a.num_sites == b.num_sites && a.fields == b.fields && a.coupling.J == b.coupling.J &&
           a.coupling.alpha == b.coupling.alpha && a.coupling.gamma == b.coupling.gamma &&
           a.beta == b.beta && a.measured_site == b.measured_site &&
           a.time_step == b.time_step && a.rounds == b.rounds;
}

std::vector<double> default_grid(double start, double stop, double step) {
    return parse_real_grid("grid", format_exact(start) + ":" + format_exact(stop) + ":" +
                                        format_exact(step));
}

} // namespace

const char* command_name(Command command) {
    for (const auto& [c, name] : kCommands) {
        if (c == command) return name;
    }
    return "unknown";
}

Command parse_command(const std::string& name) {
    for (const auto& [c, n] : kCommands) {
        if (name == n) return c;
    }
    std::vector<std::string> names;
    for (const auto& entry : kCommands) names.emplace_back(entry.second);
    throw ParseError("command", "'" + name + "' is not one of " + join(names));
}

const char* format_name(Format format) { return format == Format::Json ? "json" : "csv"; }

bool RunConfig::operator==(const RunConfig& other) const {
    return command == other.command && same_spec(spec, other.spec) &&
           threshold == other.threshold && format == other.format &&
           output_path == other.output_path && j_grid == other.j_grid &&
           beta_grid == other.beta_grid && alphas == other.alphas &&
           positions == other.positions && l_range == other.l_range &&
           round_cap == other.round_cap && threads == other.threads;
}

std::vector<double> parse_real_grid(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ParseError(key, "empty grid");
    if (t.find(':') != std::string::npos) {
        const auto parts = split(t, ':');
        if (parts.size() != 3) throw ParseError(key, "range must be start:stop:step");
        const double start = parse_real(key, parts[0]);
        const double stop = parse_real(key, parts[1]);
        const double step = parse_real(key, parts[2]);
        if (!(step > 0.0)) throw ParseError(key, "range step must be positive");
        if (stop < start) throw ParseError(key, "range stop is below start");
        // Tolerate floating-point drift so that 0:10:0.1 yields 101 points.
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        std::vector<double> out;
        out.reserve(count);
        for (std::size_t k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
        return out;
    }
    std::vector<double> out;
    for (const auto& item : split(t, ',')) out.push_back(parse_real(key, item));
    return out;
}

std::vector<int> parse_integer_grid(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ParseError(key, "empty grid");
    std::vector<int> out;
    if (t.find(':') != std::string::npos) {
        const auto parts = split(t, ':');
        if (parts.size() != 3) throw ParseError(key, "range must be start:stop:step");
        const long long start = parse_integer(key, parts[0]);
        const long long stop = parse_integer(key, parts[1]);
        const long long step = parse_integer(key, parts[2]);
        if (step <= 0) throw ParseError(key, "range step must be positive");
        if (stop < start) throw ParseError(key, "range stop is below start");
        if ((stop - start) / step > 100000) throw ParseError(key, "range is too long");
        for (long long v = start; v <= stop; v += step) out.push_back(static_cast<int>(v));
        return out;
    }
    for (const auto& item : split(t, ',')) {
        const long long v = parse_integer(key, item);
        if (v < -1000000 || v > 1000000) throw ParseError(key, "'" + item + "' is out of range");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

KeyValues parse_key_values(const std::string& text) {
    KeyValues out;
    std::istringstream stream(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(stream, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(number), "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ParseError("line " + std::to_string(number), "missing key");
        out.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return out;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_key_values(buffer.str());
}

RunConfig build_config(const KeyValues& entries) {
    std::map<std::string, std::string> values;
    for (const auto& [key, value] : entries) {
        if (kInformational.count(key)) continue;
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw ArgumentError("unknown configuration key '" + key + "'");
        }
        values[key] = value;
    }
    auto has = [&](const char* key) { return values.count(key) > 0; };

    RunConfig config;
    if (has("command")) config.command = parse_command(values["command"]);

    ChainSpec& spec = config.spec;
    if (has("L")) spec.num_sites = static_cast<int>(parse_integer("L", values["L"]));
    std::vector<double> omega{1.0};
    if (has("omega")) omega = parse_real_grid("omega", values["omega"]);
    if (omega.size() == 1) {
        spec.fields.assign(static_cast<std::size_t>(std::clamp(spec.num_sites, 0, kMaxSites)),
                           omega.front());
    } else {
        spec.fields = omega;
    }
    if (has("J")) spec.coupling.J = parse_real("J", values["J"]);
    if (has("alpha")) spec.coupling.alpha = parse_real("alpha", values["alpha"]);
    if (has("gamma")) spec.coupling.gamma = parse_real("gamma", values["gamma"]);
    if (has("beta")) spec.beta = parse_real("beta", values["beta"]);
    if (has("t")) spec.time_step = parse_real("t", values["t"]);
    if (has("r")) spec.measured_site = SiteIndex{static_cast<int>(parse_integer("r", values["r"]))};
    if (has("N")) {
        const long long n = parse_integer("N", values["N"]);
        if (n < 0) throw ParseError("N", "must be non-negative");
        spec.rounds = static_cast<std::size_t>(n);
    }
    if (has("threshold")) config.threshold = parse_real("threshold", values["threshold"]);
    if (has("format")) {
        const std::string& f = values["format"];
        if (f == "csv") {
            config.format = Format::Csv;
        } else if (f == "json") {
            config.format = Format::Json;
        } else {
            throw ParseError("format", "'" + f + "' is not csv or json");
        }
    }
    if (has("output")) config.output_path = values["output"];
    if (has("round_cap")) {
        const long long cap = parse_integer("round_cap", values["round_cap"]);
        if (cap < 0) throw ParseError("round_cap", "must be non-negative");
        config.round_cap = static_cast<std::size_t>(cap);
    }
    if (has("threads")) {
        const long long threads = parse_integer("threads", values["threads"]);
        if (threads < 0 || threads > 1024) throw ParseError("threads", "must lie in [0, 1024]");
        config.threads = static_cast<unsigned>(threads);
    }

    // Grids apply only to the commands that consume them; defaults fill in.
    const Command c = config.command;
    if (c == Command::ScanJ) {
        config.j_grid = has("j_grid") ? parse_real_grid("j_grid", values["j_grid"])
                                      : default_grid(0.0, 10.0, 0.1);
    }
    if (c == Command::ScanBeta) {
        config.beta_grid = has("beta_grid") ? parse_real_grid("beta_grid", values["beta_grid"])
                                            : default_grid(0.0, 1.0, 0.2);
        config.alphas = has("alphas") ? parse_real_grid("alphas", values["alphas"])
                                      : std::vector<double>{spec.coupling.alpha};
    }
    if (c == Command::ScanPosition) {
        if (has("positions")) {
            config.positions = parse_integer_grid("positions", values["positions"]);
        } else {
            for (int site = 1; site <= spec.num_sites; ++site) config.positions.push_back(site);
        }
    }
    if (c == Command::ProbScaling) {
        config.l_range = has("l_range") ? parse_integer_grid("l_range", values["l_range"])
                                        : std::vector<int>{4, 5, 6, 7, 8};
    }

    std::vector<std::string> failures = spec.violations();
    if (!(config.threshold > 0.5 && config.threshold <= 1.0)) {
        failures.push_back("threshold = " + format_exact(config.threshold) +
                           " must lie in (0.5, 1]");
    }
    if (config.round_cap < 1) failures.push_back("round_cap must be >= 1");
    for (double a : config.alphas) {
        if (!(a > 0.0)) failures.push_back("alphas entry " + format_exact(a) + " must be positive");
    }
    for (double b : config.beta_grid) {
        if (!(b >= 0.0)) failures.push_back("beta_grid entry " + format_exact(b) + " must be >= 0");
    }
    for (int r : config.positions) {
        if (r < 1 || r > spec.num_sites) {
            failures.push_back("positions entry " + std::to_string(r) + " outside [1, " +
                               std::to_string(spec.num_sites) + "]");
        }
    }
    for (int size : config.l_range) {
        if (size < 2 || size > kMaxSites) {
            failures.push_back("l_range entry " + std::to_string(size) + " must lie in [2, " +
                               std::to_string(kMaxSites) + "]");
        }
    }
    if (c == Command::ProbScaling && config.l_range.size() < 2) {
        failures.push_back("l_range needs at least two sizes");
    }
    if (c == Command::EntTrace && spec.num_sites < 3) {
        failures.push_back("ent-trace needs L >= 3 (got L = " + std::to_string(spec.num_sites) + ")");
    }
    if (!failures.empty()) {
        std::string message = "invalid configuration:";
        for (const auto& f : failures) message += "\n  - " + f;
        throw ValidationError(message);
    }
    return config;
}

RunConfig parse_config(int argc, const char* const* argv) {
    CLI::App app{"Measurement-based quantum refrigerator simulator", "qcool"};
    std::string command;
    std::string config_path;
    app.add_option("command", command,
                   "scan-j | scan-n | scan-beta | scan-position | prob-scaling | ent-trace | "
                   "single-run (may instead come from --config)");
    app.add_option("--config", config_path, "Flat key = value configuration file");

    struct Flag {
        const char* name;
        const char* key;
        const char* help;
    };
    static constexpr Flag kFlags[] = {
        {"--L", "L", "Number of sites (default 8)"},
        {"--omega", "omega", "Local field, one value or one per site (default 1)"},
        {"--J", "J", "Coupling strength (default 3)"},
        {"--alpha", "alpha", "Coupling fall-off exponent (default 2.5)"},
        {"--gamma", "gamma", "XY anisotropy (default 0)"},
        {"--beta", "beta", "Inverse temperature of the initial state (default 0)"},
        {"--t", "t", "Evolution time per round (default 1)"},
        {"--r", "r", "Measured site, 1-based (default 1)"},
        {"--N", "N", "Number of rounds (default 500)"},
        {"--threshold", "threshold", "Cooling threshold on ground fidelity (default 0.99)"},
        {"--format", "format", "csv | json (default csv)"},
        {"--output", "output", "Output path (default standard output)"},
        {"--j-grid", "j_grid", "Interaction grid for scan-j (default 0:10:0.1)"},
        {"--beta-grid", "beta_grid", "Inverse-temperature grid for scan-beta (default 0:1:0.2)"},
        {"--alphas", "alphas", "Fall-off exponents for scan-beta (default --alpha)"},
        {"--positions", "positions", "Measured positions for scan-position (default all)"},
        {"--l-range", "l_range", "System sizes for prob-scaling (default 4:8:1)"},
        {"--round-cap", "round_cap", "Round cap for run-until-cooled sweeps (default 2000)"},
        {"--threads", "threads", "Worker threads, 0 = hardware concurrency (default 0)"},
    };
    std::map<std::string, std::string> flag_values;
    std::vector<std::pair<const Flag*, CLI::Option*>> options;
    for (const Flag& flag : kFlags) {
        options.emplace_back(&flag, app.add_option(flag.name, flag_values[flag.key], flag.help)
                                        ->allow_extra_args(false));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw ArgumentError(e.what());
    }

    KeyValues entries;
    if (!config_path.empty()) entries = read_config_file(config_path);
    const bool file_command = std::any_of(entries.begin(), entries.end(),
                                          [](const auto& e) { return e.first == "command"; });
    if (!command.empty()) {
        entries.emplace_back("command", command);
    } else if (!file_command) {
        throw ArgumentError("a command is required (scan-j, scan-n, scan-beta, scan-position, "
                            "prob-scaling, ent-trace, single-run)");
    }
    for (const auto& [flag, option] : options) {
        if (option->count() > 0) entries.emplace_back(flag->key, flag_values[flag->key]);
    }
    return build_config(entries);
}

KeyValues serialize(const RunConfig& config) {
    const ChainSpec& spec = config.spec;
    KeyValues out{
        {"command", command_name(config.command)},
        {"L", std::to_string(spec.num_sites)},
        {"omega", join_values(spec.fields)},
        {"J", format_exact(spec.coupling.J)},
        {"alpha", format_exact(spec.coupling.alpha)},
        {"gamma", format_exact(spec.coupling.gamma)},
        {"beta", format_exact(spec.beta)},
        {"t", format_exact(spec.time_step)},
        {"r", std::to_string(spec.measured_site.value())},
        {"N", std::to_string(spec.rounds)},
        {"threshold", format_exact(config.threshold)},
        {"format", format_name(config.format)},
    };
    if (!config.output_path.empty()) out.emplace_back("output", config.output_path);
    if (!config.j_grid.empty()) out.emplace_back("j_grid", join_values(config.j_grid));
    if (!config.beta_grid.empty()) out.emplace_back("beta_grid", join_values(config.beta_grid));
    if (!config.alphas.empty()) out.emplace_back("alphas", join_values(config.alphas));
    if (!config.positions.empty()) out.emplace_back("positions", join_values(config.positions));
    if (!config.l_range.empty()) out.emplace_back("l_range", join_values(config.l_range));
    out.emplace_back("round_cap", std::to_string(config.round_cap));
    out.emplace_back("threads", std::to_string(config.threads));
    return out;
}

std::string serialize_text(const RunConfig& config) {
    std::string out;
    for (const auto& [key, value] : serialize(config)) out += key + " = " + value + "\n";
    return out;
}

} // namespace qcool::cli
