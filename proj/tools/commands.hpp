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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cohord/complex_matrix.hpp"
#include "csv.hpp"

namespace cohord::cli {

// Exit codes: 0 success, 1 usage or input parse error, 2 numeric failure,
// 3 golden mismatch.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;
inline constexpr int kExitGolden = 3;

inline constexpr double kGoldenTol = 1e-9;

struct CommonOptions {
  std::filesystem::path out_dir = ".";
  std::string format = "csv";  // "csv", or "json" to mirror every table
  std::uint64_t seed = 12345;
  unsigned threads = 0;  // 0: resolve from COHERENCE_ORDERS_THREADS / default
};

struct StateOptions {
  std::string state;  // family name; empty when --in is used
  std::size_t n_qubits = 3;
  double p = 0.0;
  double phi = 0.0;
  std::filesystem::path input_file;
};

struct DephaseOptions {
  std::string topology = "common";
  double Gamma = 100.0;
  double gamma = 10.0;
  double omega0 = 0.0;
  std::vector<double> lambdas;  // per qubit; single value broadcasts
  double t_max = 0.5;
  std::size_t steps = 100;
  std::size_t monte_carlo = 0;  // trajectory count; 0 disables
  std::string figure;           // "3a" | "3b"
};

struct MetrologyOptions {
  double tau = 0.5235987755982988;  // pi/6
  std::string figure;               // "4" | "A1" | "A2" | "A4" | "A5"
  double phi = 0.0;                 // panel angle for --figure 4
  std::size_t grid = 101;
};

struct ReproduceOptions {
  std::filesystem::path golden_dir = "data/golden";
  bool update = false;
};

/// Parses a plain-text complex matrix (one row per line, entries re+imj)
/// and validates Hermiticity, trace and positivity.
ComplexMatrix load_state_file(const std::filesystem::path& path);

ComplexMatrix resolve_state(const StateOptions& options);

int run_decompose(const CommonOptions& common, const StateOptions& state);
int run_dephase(const CommonOptions& common, StateOptions state, DephaseOptions options);
int run_metrology(const CommonOptions& common, const StateOptions& state,
                  const MetrologyOptions& options);
int run_reproduce(const CommonOptions& common, const ReproduceOptions& options);

/// Full argument-vector entry point used by main() and the CLI tests.
int run_cli(int argc, const char* const* argv);

}  // namespace cohord::cli
