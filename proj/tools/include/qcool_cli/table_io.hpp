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

/// 12 significant digits, '.' separator, locale independent; empty if absent.
std::string format_cell(const Cell& cell);

/// '#'-prefixed `key = value` metadata lines, a header row, then one line per row.
void write_csv(const SweepTable& table, std::ostream& out);
/// {"metadata": {...}, "columns": [...], "rows": [{column: value|null}], "row_errors": [...]}.
void write_json(const SweepTable& table, std::ostream& out);

/// Throws IoError when `path` cannot be opened for writing. Leaves no file
/// behind if none existed.
void ensure_writable(const std::string& path);

/// Writes the whole table to `path` (standard output when empty).
void write_table(const SweepTable& table, const std::string& path, Format format);

} // namespace qcool::cli
