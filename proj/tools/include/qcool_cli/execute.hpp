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

#include <iosfwd>
#include <string>

#include "qcool/experiments.hpp"
#include "qcool_cli/config.hpp"

namespace qcool::cli {

struct Outcome {
    SweepTable table;
    /// Command-specific details appended to the summary line.
    std::string details;
};

/// Runs the experiment mapped to the command; metadata is the serialized
/// config plus schema and engine identifiers.
Outcome run_experiment(const RunConfig& config);

/// Checks the output path, runs, writes the artifact and prints a one-line
/// summary to `summary`; row failures go to `diagnostics`. Returns 0 on
/// success and 1 if any row failed.
int execute(const RunConfig& config, std::ostream& summary, std::ostream& diagnostics);

/// Full entry point: parse, execute, map errors to exit codes
/// (0 ok, 1 row failure, 2 invalid arguments, 3 I/O error, 4 runtime error).
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qcool::cli
