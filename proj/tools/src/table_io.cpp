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

#include "qcool_cli/table_io.hpp"

#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qcool::cli {

std::string format_cell(const Cell& cell) {
    if (!cell) return {};
    char buffer[64];
    const auto result =
        std::to_chars(buffer, buffer + sizeof(buffer), *cell, std::chars_format::general, 12);
    return std::string(buffer, result.ptr);
}

void write_csv(const SweepTable& table, std::ostream& out) {
    for (const auto& [key, value] : table.metadata) out << "# " << key << " = " << value << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << (c ? "," : "") << (c < row.size() ? format_cell(row[c]) : std::string{});
        }
        out << '\n';
    }
}

void write_json(const SweepTable& table, std::ostream& out) {
    using Json = nlohmann::ordered_json;
    Json doc;
    Json metadata = Json::object();
    for (const auto& [key, value] : table.metadata) metadata[key] = value;
    doc["metadata"] = metadata;
    doc["columns"] = table.columns;
    doc["rows"] = Json::array();
    for (const auto& row : table.rows) {
        Json record = Json::object();
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            const Cell cell = c < row.size() ? row[c] : std::nullopt;
            record[table.columns[c]] = cell ? Json(*cell) : Json(nullptr);
        }
        doc["rows"].push_back(std::move(record));
    }
    Json errors = Json::array();
    for (const auto& e : table.row_errors) errors.push_back(e.empty() ? Json(nullptr) : Json(e));
    doc["row_errors"] = errors;
    out << doc.dump(2) << '\n';
}

void ensure_writable(const std::string& path) {
    if (path.empty()) return;
    std::error_code ec;
    const bool existed = std::filesystem::exists(path, ec);
    if (existed && std::filesystem::is_directory(path, ec)) {
        throw IoError("output path '" + path + "' is a directory");
    }
    {
        std::ofstream probe(path, std::ios::app | std::ios::binary);
        if (!probe) throw IoError("cannot write output path '" + path + "'");
    }
    if (!existed) std::filesystem::remove(path, ec);
}

void write_table(const SweepTable& table, const std::string& path, Format format) {
    std::ostringstream buffer;
    if (format == Format::Json) {
        write_json(table, buffer);
    } else {
        write_csv(table, buffer);
    }
    if (path.empty()) {
        std::cout << buffer.str();
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw IoError("cannot write output path '" + path + "'");
    out << buffer.str();
    if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

} // namespace qcool::cli
