// Copyright 2026 The Cohord Authors
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

#include "csv.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cohord/errors.hpp"

namespace cohord::cli {

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void Table::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_g17(v));
  rows.push_back(std::move(cells));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_number(const std::string& text, double& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size();
}

}  // namespace

void write_csv(const Table& table, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open " + path.string() + " for writing");
  for (const auto& [key, value] : table.meta) file << "# " << key << ": " << value << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    file << table.columns[c] << (c + 1 == table.columns.size() ? "\n" : ",");
  for (const auto& row : table.rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      file << row[c] << (c + 1 == row.size() ? "\n" : ",");
  if (!file) throw Error("failed writing " + path.string());
}

void write_json(const Table& table, const std::filesystem::path& path) {
  nlohmann::json j;
  for (const auto& [key, value] : table.meta) j["meta"][key] = value;
  j["columns"] = table.columns;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json jrow = nlohmann::json::array();
    for (const std::string& cell : row) {
      double value = 0.0;
      if (parse_number(cell, value))
        jrow.push_back(value);
      else
        jrow.push_back(cell);
    }
    j["rows"].push_back(std::move(jrow));
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open " + path.string() + " for writing");
  file << j.dump(2) << "\n";
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot open " + path.string());
  Table table;
  std::string line;
  bool have_header = false;
  while (std::getline(file, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.erase(0, 1);
      const std::size_t colon = body.find(": ");
      if (colon == std::string::npos)
        table.meta.emplace_back(body, "");
      else
        table.meta.emplace_back(body.substr(0, colon), body.substr(colon + 2));
      continue;
    }
    if (!have_header) {
      table.columns = split_csv_line(line);
      have_header = true;
    } else {
      table.rows.push_back(split_csv_line(line));
    }
  }
  if (!have_header) throw ParseError(path.string() + ": no header row");
  return table;
}

std::vector<CellDiff> compare_tables(const Table& golden, const Table& fresh, double tol) {
  std::vector<CellDiff> diffs;
  if (golden.columns != fresh.columns) {
    diffs.push_back({0, "<columns>", "", ""});
    return diffs;
  }
  if (golden.rows.size() != fresh.rows.size()) {
    diffs.push_back({0, "<row count>", std::to_string(golden.rows.size()),
                     std::to_string(fresh.rows.size())});
    return diffs;
  }
  for (std::size_t r = 0; r < golden.rows.size(); ++r) {
    const auto& grow = golden.rows[r];
    const auto& frow = fresh.rows[r];
    const std::size_t ncols = std::max(grow.size(), frow.size());
    for (std::size_t c = 0; c < ncols; ++c) {
      const std::string gcell = c < grow.size() ? grow[c] : "";
      const std::string fcell = c < frow.size() ? frow[c] : "";
      const std::string column = c < golden.columns.size() ? golden.columns[c]
                                                           : "col" + std::to_string(c);
      double gv = 0.0, fv = 0.0;
      if (parse_number(gcell, gv) && parse_number(fcell, fv)) {
        if (std::abs(gv - fv) > tol * (1.0 + std::max(std::abs(gv), std::abs(fv))))
          diffs.push_back({r + 1, column, gcell, fcell});
      } else if (gcell != fcell) {
        diffs.push_back({r + 1, column, gcell, fcell});
      }
    }
  }
  return diffs;
}

}  // namespace cohord::cli
