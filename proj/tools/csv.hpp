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

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace cohord::cli {

/// One output table: '#'-prefixed metadata lines, a header row and string
/// cells. Numbers are formatted with 17 significant digits so regenerated
/// files are byte-identical.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(const std::vector<double>& values);
  void add_cell_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
};

std::string format_g17(double value);

void write_csv(const Table& table, const std::filesystem::path& path);
void write_json(const Table& table, const std::filesystem::path& path);

/// Parses a CSV written by write_csv. Throws ParseError.
Table read_csv(const std::filesystem::path& path);

struct CellDiff {
  std::size_t row = 0;        // 1-based data row; 0 for structural differences
  std::string column;
  std::string golden;
  std::string fresh;
};

/// Numeric-aware comparison: cells that parse as numbers match when
/// |a - b| <= tol * (1 + max(|a|, |b|)); everything else must match exactly.
std::vector<CellDiff> compare_tables(const Table& golden, const Table& fresh, double tol);

}  // namespace cohord::cli
