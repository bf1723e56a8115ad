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
#include <string>
#include <utility>
#include <vector>

#include "qcool/errors.hpp"
#include "qcool/model.hpp"

namespace qcool::cli {

inline constexpr const char* kSchemaVersion = "1";

/// Malformed value for a named configuration key.
class ParseError : public Error {
  public:
    ParseError(const std::string& key, const std::string& message)
        : Error("invalid value for '" + key + "': " + message), key_(key) {}
    const std::string& key() const noexcept { return key_; }

  private:
    std::string key_;
};

/// Output path cannot be written.
class IoError : public Error {
  public:
    using Error::Error;
};

/// --help was requested; carries the usage text.
class HelpRequested : public Error {
  public:
    using Error::Error;
};

enum class Command { ScanJ, ScanN, ScanBeta, ScanPosition, ProbScaling, EntTrace, SingleRun };
enum class Format { Csv, Json };

const char* command_name(Command command);
Command parse_command(const std::string& name);
const char* format_name(Format format);

struct RunConfig {
    Command command = Command::SingleRun;
    ChainSpec spec = ChainSpec::uniform(8);
    double threshold = 0.99;
    Format format = Format::Csv;
    /// Empty means standard output.
    std::string output_path;
    std::vector<double> j_grid;
    std::vector<double> beta_grid;
    std::vector<double> alphas;
    std::vector<int> positions;
    std::vector<int> l_range;
    std::size_t round_cap = 2000;
    unsigned threads = 0;

    bool operator==(const RunConfig& other) const;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Comma list `a,b,c` or inclusive range `start:stop:step`.
std::vector<double> parse_real_grid(const std::string& key, const std::string& text);
std::vector<int> parse_integer_grid(const std::string& key, const std::string& text);

/// Flat `key = value` lines; '#' starts a comment.
KeyValues parse_key_values(const std::string& text);
KeyValues read_config_file(const std::string& path);

/// Applies entries over the documented defaults and validates the result.
/// Unknown keys raise ArgumentError, malformed values ParseError, and
/// invariant violations a ValidationError listing every failure.
RunConfig build_config(const KeyValues& entries);

/// Parses argv (command, flags, optional --config file); flags override the
/// file, which overrides the defaults.
RunConfig parse_config(int argc, const char* const* argv);

/// Every field as ordered key/value pairs; build_config(serialize(c)) == c.
KeyValues serialize(const RunConfig& config);
std::string serialize_text(const RunConfig& config);

} // namespace qcool::cli
