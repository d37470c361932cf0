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

#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "cohord/coherence.hpp"
#include "cohord/dephasing.hpp"
#include "cohord/linalg.hpp"
#include "cohord/metrology.hpp"
#include "cohord/operator_basis.hpp"
#include "cohord/version.hpp"

namespace cohord::cli {

namespace {

using nlohmann::json;

unsigned resolve_threads(unsigned requested) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned cap = hw;
  if (const char* env = std::getenv("COHERENCE_ORDERS_THREADS")) {
    const unsigned long parsed = std::strtoul(env, nullptr, 10);
    if (parsed >= 1) cap = static_cast<unsigned>(std::min<unsigned long>(parsed, hw));
  }
  const unsigned wanted = requested == 0 ? std::min(4u, hw) : requested;
  return std::max(1u, std::min(wanted, cap));
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

const std::map<std::string, StateFamily>& family_names() {
  static const std::map<std::string, StateFamily> names = {
      {"ghz", StateFamily::Ghz},
      {"plus", StateFamily::Plus},
      {"w", StateFamily::W},
      {"bell-phi-plus", StateFamily::BellPhiPlus},
      {"bell-phi-minus", StateFamily::BellPhiMinus},
      {"bell-psi-plus", StateFamily::BellPsiPlus},
      {"bell-psi-minus", StateFamily::BellPsiMinus},
      {"mixed", StateFamily::MaximallyMixed},
      {"example1", StateFamily::Example1},
      {"example2", StateFamily::Example2},
      {"example3", StateFamily::Example3},
      {"example4", StateFamily::Example4},
      {"example5", StateFamily::Example5},
  };
  return names;
}

Complex parse_complex_token(const std::string& token) {
  const auto fail = [&] { throw ParseError("bad complex entry '" + token + "'"); };
  if (token.empty()) fail();
  std::string text = token;
  bool has_j = false;
  if (text.back() == 'j' || text.back() == 'J') {
    has_j = true;
    text.pop_back();
  }
  if (!has_j) {
    char* end = nullptr;
    const double re = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) fail();
    return {re, 0.0};
  }
  // split "re+im" at the last sign that is not an exponent sign or leading
  std::size_t split = std::string::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    // pure imaginary: "0.5j", "j", "-j"
    if (text.empty() || text == "+") return {0.0, 1.0};
    if (text == "-") return {0.0, -1.0};
    char* end = nullptr;
    const double im = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) fail();
    return {0.0, im};
  }
  const std::string re_text = text.substr(0, split);
  std::string im_text = text.substr(split);
  if (im_text == "+") im_text = "1";
  if (im_text == "-") im_text = "-1";
  char* end = nullptr;
  const double re = std::strtod(re_text.c_str(), &end);
  if (end != re_text.c_str() + re_text.size()) fail();
  const double im = std::strtod(im_text.c_str(), &end);
  if (end != im_text.c_str() + im_text.size()) fail();
  return {re, im};
}

std::string format_complex(Complex z) {
  std::string out = format_g17(z.real());
  if (z.imag() >= 0.0 || std::isnan(z.imag())) out += "+";
  out += format_g17(z.imag());
  out += "j";
  return out;
}

Table make_table(const std::string& command, const json& params) {
  Table table;
  table.meta.emplace_back("cohord", kVersion);
  table.meta.emplace_back("command", command);
  table.meta.emplace_back("params", params.dump());
  return table;
}

void emit_table(const Table& table, const CommonOptions& common, const std::string& stem) {
  std::filesystem::create_directories(common.out_dir);
  write_csv(table, common.out_dir / (stem + ".csv"));
  if (common.format == "json") write_json(table, common.out_dir / (stem + ".json"));
}

void record_run_config(const CommonOptions& common, const std::string& command,
                       const json& params) {
  std::filesystem::create_directories(common.out_dir);
  json j;
  j["cohord"] = kVersion;
  j["command"] = command;
  j["seed"] = common.seed;
  j["format"] = common.format;
  j["params"] = params;
  std::ofstream file(common.out_dir / "run_config.json", std::ios::binary);
  file << j.dump(2) << "\n";
}

json state_params(const StateOptions& state) {
  json j;
  if (!state.input_file.empty()) {
    j["in"] = state.input_file.string();
  } else {
    j["state"] = state.state;
    j["n"] = state.n_qubits;
    j["p"] = state.p;
    j["phi"] = state.phi;
  }
  return j;
}

void write_plot_script(const std::filesystem::path& path, const std::string& csv_name,
                       const std::string& xlabel, const std::vector<std::string>& columns) {
  std::ofstream file(path, std::ios::binary);
  file << "# gnuplot script, generated alongside " << csv_name << "\n"
       << "set datafile separator ','\n"
       << "set key outside\n"
       << "set xlabel '" << xlabel << "'\n"
       << "set grid\n"
       << "plot \\\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    file << "  '" << csv_name << "' using 1:" << i + 2 << " with lines title '" << columns[i]
         << "'";
    file << (i + 1 == columns.size() ? "\n" : ", \\\n");
  }
}

// ---- figure builders --------------------------------------------------

NoiseModel figure3_model(const std::string& figure) {
  if (figure == "3a") return NoiseModel::common_bath(3, 100.0, 10.0, 1.0);
  if (figure == "3b") return NoiseModel::independent_baths({1.0, 0.8, 0.2}, 100.0, 10.0);
  throw ParseError("unknown dephasing figure '" + figure + "' (expected 3a or 3b)");
}

Table dephase_table(const ComplexMatrix& rho, const std::vector<double>& times,
                    const NoiseModel& model, std::size_t n_traj, std::uint64_t seed,
                    unsigned threads, const json& params) {
  const std::size_t n = qubit_count_for_dimension(rho);
  Table table = make_table("dephase", params);
  table.columns = {"t"};
  for (std::size_t m = 0; m <= n; ++m) table.columns.push_back("c_l1_m" + std::to_string(m));
  for (std::size_t m = 0; m <= n; ++m) table.columns.push_back("ctilde_m" + std::to_string(m));
  const bool with_mc = n_traj > 0;
  if (with_mc) {
    for (std::size_t m = 0; m <= n; ++m)
      table.columns.push_back("mc_ctilde_m" + std::to_string(m));
    for (std::size_t m = 0; m <= n; ++m) table.columns.push_back("mc_se_m" + std::to_string(m));
  }

  const DephasingResult sweep = dephase_sweep(rho, times, model);
  DephasingResult mc;
  if (with_mc) mc = monte_carlo_dephase(rho, times, model, n_traj, seed, threads);

  for (std::size_t k = 0; k < times.size(); ++k) {
    std::vector<double> row = {times[k]};
    for (std::size_t m = 0; m <= n; ++m) row.push_back(sweep.per_order_l1[k][m]);
    for (std::size_t m = 0; m <= n; ++m) row.push_back(sweep.normalized[k][m]);
    if (with_mc) {
      for (std::size_t m = 0; m <= n; ++m) row.push_back(mc.normalized[k][m]);
      for (std::size_t m = 0; m <= n; ++m) row.push_back(mc.normalized_se[k][m]);
    }
    table.add_row(row);
  }
  return table;
}

Table metrology_sweep_table(const std::string& figure, double phi_panel, double tau,
                            std::size_t grid_points) {
  json params = {{"figure", figure}, {"tau", tau}};
  StateFamily family = StateFamily::Example1;
  bool sweep_p = false;
  double phi = 0.0;
  std::string xlabel = "phi";
  if (figure == "4") {
    family = StateFamily::Example3;
    sweep_p = true;
    phi = phi_panel;
    xlabel = "p";
    params["phi"] = phi_panel;
  } else if (figure == "A1") {
    family = StateFamily::Example1;
  } else if (figure == "A2") {
    family = StateFamily::Example2;
  } else if (figure == "A4") {
    family = StateFamily::Example4;
    sweep_p = true;
    xlabel = "p";
  } else if (figure == "A5") {
    family = StateFamily::Example5;
    sweep_p = true;
    xlabel = "p";
  } else {
    throw ParseError("unknown metrology figure '" + figure + "'");
  }

  const PhaseEncoding enc = PhaseEncoding::collective_z(3, tau);
  const double baseline = qfi(make_state({StateFamily::Plus, 3, 0.0, 0.0}), enc);

  Table table = make_table("metrology", params);
  table.columns = {xlabel,      "f_q", "s_tau",     "b_mmax",
                   "f_q_class", "f_i", "f_i_mmax"};
  const std::vector<double> axis =
      sweep_p ? linspace(0.0, 1.0, grid_points)
              : linspace(0.0, std::numbers::pi, grid_points);
  for (double x : axis) {
    StateFamilySpec spec{family, 3, sweep_p ? x : 0.0, sweep_p ? phi : x};
    const ComplexMatrix rho = make_state(spec);
    const MetrologyReport report = witness(rho, enc);
    table.add_row({x, report.f_q, report.s_tau,
                   report.b_tau_m[static_cast<std::size_t>(report.m_max)], baseline, report.f_i,
                   report.f_i_mmax});
  }
  return table;
}

struct FigureSpec {
  std::string stem;
  std::string xlabel;
  Table table;
};

std::vector<FigureSpec> build_all_figures(std::uint64_t seed, unsigned threads) {
  std::vector<FigureSpec> figures;

  const ComplexMatrix plus3 = make_state({StateFamily::Plus, 3, 0.0, 0.0});
  {
    json params = {{"figure", "3a"}, {"Gamma", 100.0}, {"gamma", 10.0}, {"lambda", 1.0}};
    figures.push_back({"fig3a", "t (s)",
                       dephase_table(plus3, linspace(0.0, 0.5, 100), figure3_model("3a"), 0,
                                     seed, threads, params)});
  }
  {
    json params = {{"figure", "3b"},
                   {"Gamma", 100.0},
                   {"gamma", 10.0},
                   {"lambda", {1.0, 0.8, 0.2}}};
    figures.push_back({"fig3b", "t (s)",
                       dephase_table(plus3, linspace(0.0, 1.0, 100), figure3_model("3b"), 0,
                                     seed, threads, params)});
  }
  {
    // Monte Carlo companion: dt = 1e-3 grid, every 10th row reported.
    json params = {{"figure", "3a"}, {"monte_carlo", 1000}, {"seed", seed}};
    Table fine = dephase_table(plus3, linspace(0.0, 0.5, 501), figure3_model("3a"), 1000, seed,
                               threads, params);
    Table thin = fine;
    thin.rows.clear();
    for (std::size_t k = 0; k < 501; k += 10) thin.rows.push_back(fine.rows[k]);
    figures.push_back({"fig3a_mc", "t (s)", std::move(thin)});
  }

  const double tau = std::numbers::pi / 6.0;
  const std::vector<std::pair<std::string, double>> panels = {
      {"fig4a", 0.0},
      {"fig4b", std::numbers::pi / 6.0},
      {"fig4c", std::numbers::pi / 4.0},
      {"fig4d", std::numbers::pi / 3.0}};
  for (const auto& [stem, phi] : panels)
    figures.push_back({stem, "p", metrology_sweep_table("4", phi, tau, 101)});

  figures.push_back({"figA1", "phi", metrology_sweep_table("A1", 0.0, tau, 101)});
  figures.push_back({"figA2", "phi", metrology_sweep_table("A2", 0.0, tau, 101)});
  figures.push_back({"figA4", "p", metrology_sweep_table("A4", 0.0, tau, 101)});
  figures.push_back({"figA5", "p", metrology_sweep_table("A5", 0.0, tau, 101)});
  return figures;
}

}  // namespace

ComplexMatrix load_state_file(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw ParseError("cannot open state file " + path.string());
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(file, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.front() == '#') continue;
    std::vector<Complex> row;
    std::stringstream ss(line);
    std::string token;
    while (ss >> token) row.push_back(parse_complex_token(token));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path.string() + ": empty matrix");
  const std::size_t dim = rows.size();
  ComplexMatrix rho(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (rows[r].size() != dim)
      throw ParseError(path.string() + ": row " + std::to_string(r + 1) + " has " +
                       std::to_string(rows[r].size()) + " entries, expected " +
                       std::to_string(dim));
    for (std::size_t c = 0; c < dim; ++c) rho(r, c) = rows[r][c];
  }

  qubit_count_for_dimension(rho);  // power-of-two check
  double defect = 0.0;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = r; c < dim; ++c)
      defect = std::max(defect, std::abs(rho(r, c) - std::conj(rho(c, r))));
  if (defect > 1e-8)
    throw InvalidState(path.string() + ": matrix is not Hermitian (defect " +
                       format_g17(defect) + ")");
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex{1.0}) > 1e-6)
    throw InvalidState(path.string() + ": trace is " + format_complex(tr) + ", expected 1");
  // symmetrize roundoff before the spectral check
  ComplexMatrix sym(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) sym(r, c) = 0.5 * (rho(r, c) + std::conj(rho(c, r)));
  const HermitianEigenResult eig = hermitian_eig(sym);
  if (eig.eigenvalues.front() < -1e-8)
    throw InvalidState(path.string() + ": matrix is not positive semidefinite (min eigenvalue " +
                       format_g17(eig.eigenvalues.front()) + ")");
  return sym;
}

ComplexMatrix resolve_state(const StateOptions& options) {
  if (!options.input_file.empty()) return load_state_file(options.input_file);
  const auto it = family_names().find(options.state);
  if (it == family_names().end())
    throw ParseError("unknown state family '" + options.state + "'");
  return make_state({it->second, options.n_qubits, options.p, options.phi});
}

int run_decompose(const CommonOptions& common, const StateOptions& state) {
  const ComplexMatrix rho = resolve_state(state);
  const std::size_t n = qubit_count_for_dimension(rho);

  const json params = state_params(state);
  record_run_config(common, "decompose", params);

  Table table = make_table("decompose", params);
  table.columns = {"m", "n_elements", "c_l1", "c_trace", "mqi"};

  const OrderDecomposition sectors = decompose(rho);
  const std::vector<double> l1 = c_l1_all_orders(rho);
  for (int m = 0; m <= static_cast<int>(n); ++m) {
    // the closed-form count extends to m = 0 as the central binomial
    std::uint64_t count;
    if (m == 0) {
      count = 1;
      for (std::size_t i = 1; i <= n; ++i)
        count = count * static_cast<std::uint64_t>(n + i) / i;
    } else {
      count = count_order_elements(n, m);
    }
    table.add_row({static_cast<double>(m), static_cast<double>(count),
                   l1[static_cast<std::size_t>(m)], trace_norm(sectors.component(m)),
                   mqi(sectors, m)});
  }
  emit_table(table, common, "decompose");
  return kExitOk;
}

int run_dephase(const CommonOptions& common, StateOptions state, DephaseOptions options) {
  NoiseModel model;
  std::vector<double> times;
  if (!options.figure.empty()) {
    model = figure3_model(options.figure);
    state.state = "plus";
    state.n_qubits = 3;
    state.input_file.clear();
    times = options.figure == "3a" ? linspace(0.0, 0.5, options.steps)
                                   : linspace(0.0, 1.0, options.steps);
  }
  const ComplexMatrix rho = resolve_state(state);
  const std::size_t n = qubit_count_for_dimension(rho);
  if (options.figure.empty()) {
    std::vector<double> lambdas = options.lambdas;
    if (lambdas.empty()) lambdas.assign(n, 1.0);
    if (lambdas.size() == 1) lambdas.assign(n, lambdas.front());
    if (options.topology == "common") {
      model = NoiseModel::common_bath(n, options.Gamma, options.gamma, lambdas.front(),
                                      options.omega0);
      model.couplings = lambdas;
      model.common_coupling();  // reject unequal couplings early
    } else if (options.topology == "independent") {
      model = NoiseModel::independent_baths(lambdas, options.Gamma, options.gamma,
                                            options.omega0);
    } else {
      throw ParseError("unknown topology '" + options.topology + "'");
    }
    times = linspace(0.0, options.t_max, options.steps);
  }

  json params = state_params(state);
  params["topology"] = model.topology == BathTopology::Common ? "common" : "independent";
  params["Gamma"] = model.Gamma;
  params["gamma"] = model.gamma;
  params["omega0"] = model.omega0;
  params["lambda"] = model.couplings;
  params["steps"] = times.size();
  params["t_max"] = times.back();
  if (!options.figure.empty()) params["figure"] = options.figure;
  if (options.monte_carlo > 0) {
    params["monte_carlo"] = options.monte_carlo;
    params["seed"] = common.seed;
  }
  record_run_config(common, "dephase", params);

  const Table table = dephase_table(rho, times, model, options.monte_carlo, common.seed,
                                    resolve_threads(common.threads), params);
  emit_table(table, common, "dephase");
  return kExitOk;
}

int run_metrology(const CommonOptions& common, const StateOptions& state,
                  const MetrologyOptions& options) {
  if (!options.figure.empty()) {
    json params = {{"figure", options.figure}, {"tau", options.tau}, {"phi", options.phi}};
    record_run_config(common, "metrology", params);
    const Table table =
        metrology_sweep_table(options.figure, options.phi, options.tau, options.grid);
    emit_table(table, common, "metrology_fig" + options.figure);
    return kExitOk;
  }

  const ComplexMatrix rho = resolve_state(state);
  const std::size_t n = qubit_count_for_dimension(rho);
  const PhaseEncoding enc = PhaseEncoding::collective_z(n, options.tau);
  const MetrologyReport report = witness(rho, enc);

  json params = state_params(state);
  params["tau"] = options.tau;
  record_run_config(common, "metrology", params);

  Table table = make_table("metrology", params);
  table.columns = {"quantity", "value"};
  table.add_cell_row({"f_q", format_g17(report.f_q)});
  table.add_cell_row({"s_tau", format_g17(report.s_tau)});
  for (std::size_t m = 0; m <= n; ++m)
    table.add_cell_row({"i_" + std::to_string(m), format_g17(report.i_m[m])});
  for (std::size_t m = 0; m <= n; ++m)
    table.add_cell_row({"b_tau_" + std::to_string(m), format_g17(report.b_tau_m[m])});
  table.add_cell_row({"f_i", format_g17(report.f_i)});
  table.add_cell_row({"f_i_mmax", format_g17(report.f_i_mmax)});
  table.add_cell_row({"m_max", std::to_string(report.m_max)});
  table.add_cell_row({"witness_b", report.witness_b ? "1" : "0"});
  table.add_cell_row({"witness_fi", report.witness_fi ? "1" : "0"});
  table.add_cell_row({"threshold", format_g17(report.threshold)});
  emit_table(table, common, "metrology");
  return kExitOk;
}

int run_reproduce(const CommonOptions& common, const ReproduceOptions& options) {
  record_run_config(common, "reproduce-all",
                    {{"golden_dir", options.golden_dir.string()},
                     {"update", options.update},
                     {"seed", common.seed}});
  const std::vector<FigureSpec> figures =
      build_all_figures(common.seed, resolve_threads(common.threads));

  std::filesystem::create_directories(common.out_dir);
  if (options.update) std::filesystem::create_directories(options.golden_dir);

  std::vector<std::string> complaints;
  for (const FigureSpec& figure : figures) {
    const std::string csv_name = figure.stem + ".csv";
    write_csv(figure.table, common.out_dir / csv_name);
    if (common.format == "json")
      write_json(figure.table, common.out_dir / (figure.stem + ".json"));
    std::vector<std::string> ycols(figure.table.columns.begin() + 1,
                                   figure.table.columns.end());
    write_plot_script(common.out_dir / (figure.stem + ".gp"), csv_name, figure.xlabel, ycols);

    if (options.update) {
      write_csv(figure.table, options.golden_dir / csv_name);
      continue;
    }
    const std::filesystem::path golden_path = options.golden_dir / csv_name;
    if (!std::filesystem::exists(golden_path)) {
      complaints.push_back(csv_name + ": golden file missing");
      continue;
    }
    const Table golden = read_csv(golden_path);
    for (const CellDiff& diff : compare_tables(golden, figure.table, kGoldenTol)) {
      complaints.push_back(csv_name + " row " + std::to_string(diff.row) + " column " +
                           diff.column + ": golden=" + diff.golden + " got=" + diff.fresh);
    }
  }

  if (!complaints.empty()) {
    for (const std::string& line : complaints) std::cerr << "golden mismatch: " << line << "\n";
    return kExitGolden;
  }
  std::cout << "reproduced " << figures.size() << " figure tables"
            << (options.update ? " (goldens updated)" : ", all within tolerance") << "\n";
  return kExitOk;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"coherence-order decomposition, Gaussian dephasing and phase-estimation bounds"};
  app.require_subcommand(1);
  app.fallthrough(true);  // let --seed/--out follow the subcommand name
  app.set_config("--config", "", "TOML config file; explicit flags win");

  CommonOptions common;
  app.add_option("--out", common.out_dir, "output directory")->capture_default_str();
  app.add_option("--format", common.format, "csv | json (json mirrors every csv)")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--seed", common.seed, "seed for Monte Carlo columns")->capture_default_str();

  StateOptions state;
  DephaseOptions dephase;
  MetrologyOptions metrology;
  ReproduceOptions reproduce;

  const auto add_state_flags = [&](CLI::App* sub) {
    sub->add_option("--state", state.state,
                    "state family: ghz, plus, w, bell-phi-plus, bell-phi-minus, bell-psi-plus, "
                    "bell-psi-minus, mixed, example1..example5");
    sub->add_option("--n", state.n_qubits, "qubit count for the generic families");
    sub->add_option("--p", state.p, "mixing parameter of the example families");
    sub->add_option("--phi", state.phi, "angle parameter of the example families");
    sub->add_option("--in", state.input_file,
                    "plain-text density matrix (rows of re+imj entries)");
  };

  CLI::App* cmd_decompose = app.add_subcommand(
      "decompose", "per-order table: counts, l1 and trace quantifiers, intensities");
  add_state_flags(cmd_decompose);

  CLI::App* cmd_dephase =
      app.add_subcommand("dephase", "evolve under collective-z Gaussian dephasing");
  add_state_flags(cmd_dephase);
  cmd_dephase->add_option("--topology", dephase.topology, "common | independent")
      ->capture_default_str();
  cmd_dephase->add_option("--Gamma", dephase.Gamma, "damping rate ((rad/s)^2)")
      ->capture_default_str();
  cmd_dephase->add_option("--gamma", dephase.gamma, "inverse correlation time (1/s)")
      ->capture_default_str();
  cmd_dephase->add_option("--omega0", dephase.omega0, "qubit splitting (rad/s)")
      ->capture_default_str();
  cmd_dephase->add_option("--lambda", dephase.lambdas,
                          "coupling strengths (one value broadcasts)");
  cmd_dephase->add_option("--tmax", dephase.t_max, "sweep end time (s)")->capture_default_str();
  cmd_dephase->add_option("--steps", dephase.steps, "grid points")->capture_default_str();
  cmd_dephase->add_option("--monte-carlo", dephase.monte_carlo,
                          "trajectory count for Monte Carlo columns");
  cmd_dephase->add_option("--figure", dephase.figure, "3a | 3b: load the figure parameter set");

  CLI::App* cmd_metrology =
      app.add_subcommand("metrology", "Fisher information, speed and witness report");
  add_state_flags(cmd_metrology);
  cmd_metrology->add_option("--tau", metrology.tau, "encoded phase (rad)")
      ->capture_default_str();
  cmd_metrology->add_option("--figure", metrology.figure,
                            "4 | A1 | A2 | A4 | A5: emit the figure sweep");
  cmd_metrology->add_option("--grid", metrology.grid, "sweep grid points")
      ->capture_default_str();

  CLI::App* cmd_reproduce =
      app.add_subcommand("reproduce-all", "regenerate every figure table and check goldens");
  cmd_reproduce->add_option("--golden-dir", reproduce.golden_dir, "committed golden directory")
      ->capture_default_str();
  cmd_reproduce->add_flag("--update", reproduce.update, "rewrite the goldens instead of checking");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_decompose->parsed()) return run_decompose(common, state);
    if (cmd_dephase->parsed()) return run_dephase(common, state, dephase);
    if (cmd_metrology->parsed()) {
      metrology.phi = state.phi;  // --phi doubles as the figure-4 panel angle
      return run_metrology(common, state, metrology);
    }
    if (cmd_reproduce->parsed()) return run_reproduce(common, reproduce);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GoldenMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGolden;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace cohord::cli
