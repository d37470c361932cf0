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

#include "cohord/dephasing.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "cohord/coherence.hpp"
#include "cohord/linalg.hpp"
#include "cohord/operator_basis.hpp"

namespace cohord {

NoiseModel NoiseModel::common_bath(std::size_t n_qubits, double Gamma, double gamma,
                                   double coupling, double omega0) {
  NoiseModel model;
  model.omega0 = omega0;
  model.Gamma = Gamma;
  model.gamma = gamma;
  model.couplings.assign(n_qubits, coupling);
  model.topology = BathTopology::Common;
  model.validate();
  return model;
}

NoiseModel NoiseModel::independent_baths(std::vector<double> couplings, double Gamma,
                                         double gamma, double omega0) {
  NoiseModel model;
  model.omega0 = omega0;
  model.Gamma = Gamma;
  model.gamma = gamma;
  model.couplings = std::move(couplings);
  model.topology = BathTopology::Independent;
  model.validate();
  return model;
}

OrnsteinUhlenbeckKernel NoiseModel::kernel_for(std::size_t qubit) const {
  if (qubit < kernels.size()) return kernels[qubit];
  return {Gamma, gamma};
}

double NoiseModel::common_coupling() const {
  if (topology != BathTopology::Common)
    throw TopologyMismatch("common_coupling: model is not a common bath");
  if (couplings.empty()) throw TopologyMismatch("common_coupling: no couplings");
  for (double c : couplings)
    if (c != couplings.front())
      throw TopologyMismatch("common_coupling: couplings differ across qubits");
  return couplings.front();
}

void NoiseModel::validate() const {
  if (!(gamma > 0.0)) throw ParamOutOfRange("NoiseModel: gamma must be positive");
  if (!(Gamma >= 0.0)) throw ParamOutOfRange("NoiseModel: Gamma must be nonnegative");
  for (double c : couplings)
    if (!std::isfinite(c)) throw ParamOutOfRange("NoiseModel: coupling is not finite");
  for (const OrnsteinUhlenbeckKernel& k : kernels) {
    if (!(k.gamma > 0.0)) throw ParamOutOfRange("NoiseModel: kernel gamma must be positive");
    if (!(k.Gamma >= 0.0)) throw ParamOutOfRange("NoiseModel: kernel Gamma must be nonnegative");
  }
}

double beta_ou(double t, double Gamma, double gamma) {
  if (t < 0.0) throw NegativeTime("beta: time must be nonnegative");
  // expm1 keeps the small-t limit (Gamma t^2 / 4) accurate.
  return Gamma / (2.0 * gamma * gamma) * (gamma * t + std::expm1(-gamma * t));
}

double beta(double t, const NoiseModel& model) { return beta_ou(t, model.Gamma, model.gamma); }

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace

double beta_from_kernel(const std::function<double(double)>& kernel, double t, double rel_tol) {
  if (t < 0.0) throw NegativeTime("beta_from_kernel: time must be nonnegative");
  if (t == 0.0) return 0.0;
  const auto integrand = [&](double u) { return (t - u) * kernel(u); };
  const double fa = integrand(0.0);
  const double fm = integrand(0.5 * t);
  const double fb = integrand(t);
  const double whole = t / 6.0 * (fa + 4.0 * fm + fb);
  const double eps = std::max(std::abs(whole), 1e-30) * rel_tol;
  return adaptive_simpson(integrand, 0.0, t, fa, fm, fb, whole, eps, 48);
}

ComplexMatrix apply_common(const ComplexMatrix& rho, double t, const NoiseModel& model) {
  const std::size_t n = qubit_count_for_dimension(rho);
  if (model.n_qubits() != n)
    throw ShapeMismatch("apply_common: coupling count does not match qubit count");
  const double lambda = model.common_coupling();
  const double b = beta(t, model);

  const OrderDecomposition sectors = decompose(rho);
  ComplexMatrix out(rho.rows(), rho.cols());
  for (int m = -static_cast<int>(n); m <= static_cast<int>(n); ++m) {
    const Complex factor = std::polar(std::exp(-static_cast<double>(m) * m * lambda * lambda * b),
                                      -static_cast<double>(m) * model.omega0 * t);
    out += factor * sectors.component(m);
  }
  return out;
}

ComplexMatrix apply_independent(const ComplexMatrix& rho, double t, const NoiseModel& model) {
  if (model.topology != BathTopology::Independent)
    throw TopologyMismatch("apply_independent: model is not independent baths");
  const std::size_t n = qubit_count_for_dimension(rho);
  if (model.n_qubits() != n)
    throw ShapeMismatch("apply_independent: coupling count does not match qubit count");

  // Per-site coefficient factors: letters +/- pick up the decay and the
  // Larmor phase, letters 0/z are untouched.
  std::vector<std::array<Complex, 4>> site(n);
  for (std::size_t l = 0; l < n; ++l) {
    const OrnsteinUhlenbeckKernel k = model.kernel_for(l);
    const double decay =
        std::exp(-model.couplings[l] * model.couplings[l] * beta_ou(t, k.Gamma, k.gamma));
    site[l][static_cast<std::size_t>(Letter::I0)] = 1.0;
    site[l][static_cast<std::size_t>(Letter::Plus)] = std::polar(decay, -model.omega0 * t);
    site[l][static_cast<std::size_t>(Letter::Minus)] = std::polar(decay, model.omega0 * t);
    site[l][static_cast<std::size_t>(Letter::Z)] = 1.0;
  }

  std::vector<Complex> tensor = detail::expansion_tensor(rho);
  for (std::size_t idx = 0; idx < tensor.size(); ++idx) {
    if (tensor[idx] == Complex{}) continue;
    Complex factor = 1.0;
    std::size_t digits = idx;
    for (std::size_t l = n; l-- > 0; digits >>= 2) factor *= site[l][digits & 3u];
    tensor[idx] *= factor;
  }
  return detail::tensor_to_matrix(std::move(tensor), n);
}

namespace {

std::vector<double> normalize_row(const std::vector<double>& row,
                                  const std::vector<double>& at_zero) {
  std::vector<double> out(row.size());
  for (std::size_t m = 0; m < row.size(); ++m)
    out[m] = at_zero[m] > 1e-15 ? row[m] / at_zero[m] : 1.0;
  return out;
}

// splitmix64 over (seed, trajectory) gives scheduling-independent streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trajectory) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (trajectory + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Box-Muller over mt19937_64; both pieces are pinned by the standard, so
// streams are reproducible across platforms.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_positive();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform_positive() {
    double u = uniform();
    while (u == 0.0) u = uniform();
    return u;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

struct McAccumulator {
  // [time][element] factor sums for one trajectory batch.
  std::vector<std::vector<Complex>> sums;
  std::size_t count = 0;
};

}  // namespace

DephasingResult monte_carlo_dephase(const ComplexMatrix& rho, const std::vector<double>& t_grid,
                                    const NoiseModel& model, std::size_t n_traj,
                                    std::uint64_t seed, unsigned n_threads, double max_dt) {
  if (t_grid.empty()) throw EmptyGrid("monte_carlo_dephase: empty time grid");
  if (n_traj < 1) throw ParamOutOfRange("monte_carlo_dephase: need at least one trajectory");
  if (!(max_dt > 0.0)) throw ParamOutOfRange("monte_carlo_dephase: max_dt must be positive");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0.0) throw NegativeTime("monte_carlo_dephase: negative grid time");
    if (i > 0 && t_grid[i] <= t_grid[i - 1])
      throw ParamOutOfRange("monte_carlo_dephase: grid must be strictly increasing");
  }
  const std::size_t n = qubit_count_for_dimension(rho);
  if (model.n_qubits() != n)
    throw ShapeMismatch("monte_carlo_dephase: coupling count does not match qubit count");
  model.validate();

  const std::size_t dim = rho.rows();
  const std::size_t n_times = t_grid.size();
  const std::size_t n_fields = model.topology == BathTopology::Common ? 1 : n;

  // Stationary variance Gamma/2, the kernel normalization consistent with
  // beta_ou and the analytic channels.
  std::vector<double> sigma(n_fields), rate(n_fields);
  for (std::size_t f = 0; f < n_fields; ++f) {
    const OrnsteinUhlenbeckKernel k =
        model.topology == BathTopology::Common ? model.kernel_for(0) : model.kernel_for(f);
    sigma[f] = std::sqrt(k.Gamma / 2.0);
    rate[f] = k.gamma;
  }

  // Element phase pattern: delta_l = bit_l(col) - bit_l(row) per qubit.
  struct ElementPattern {
    std::vector<std::pair<std::size_t, int>> deltas;
  };
  std::vector<ElementPattern> patterns(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      auto& pat = patterns[r * dim + c];
      for (std::size_t l = 0; l < n; ++l) {
        const std::size_t shift = n - 1 - l;
        const int delta = static_cast<int>((c >> shift) & 1u) - static_cast<int>((r >> shift) & 1u);
        if (delta != 0) pat.deltas.emplace_back(l, delta);
      }
    }
  }

  // Fixed batch partition (independent of thread count) so the reduction
  // order, and therefore the bits of the result, never change.
  const std::size_t n_batches = std::min<std::size_t>(100, n_traj);
  std::vector<McAccumulator> batches(n_batches);
  for (auto& b : batches)
    b.sums.assign(n_times, std::vector<Complex>(dim * dim, Complex{}));

  const auto run_batch = [&](std::size_t batch_index) {
    McAccumulator& acc = batches[batch_index];
    const std::size_t begin = batch_index * n_traj / n_batches;
    const std::size_t end = (batch_index + 1) * n_traj / n_batches;
    acc.count = end - begin;

    std::vector<double> field(n_fields), phase_integral(n_fields);
    std::vector<Complex> qubit_factor(n);
    for (std::size_t traj = begin; traj < end; ++traj) {
      NormalSampler normal(mix_seed(seed, traj));
      for (std::size_t f = 0; f < n_fields; ++f) {
        field[f] = sigma[f] * normal();  // stationary start
        phase_integral[f] = 0.0;
      }
      double prev_t = 0.0;
      for (std::size_t k = 0; k < n_times; ++k) {
        const double interval = t_grid[k] - prev_t;
        if (interval > 0.0) {
          const auto n_sub = static_cast<std::size_t>(
              std::max(1.0, std::ceil(interval / max_dt - 1e-9)));
          const double dt = interval / static_cast<double>(n_sub);
          for (std::size_t step = 0; step < n_sub; ++step) {
            for (std::size_t f = 0; f < n_fields; ++f) {
              const double damp = std::exp(-rate[f] * dt);
              const double next =
                  field[f] * damp +
                  sigma[f] * std::sqrt(-std::expm1(-2.0 * rate[f] * dt)) * normal();
              phase_integral[f] += 0.5 * dt * (field[f] + next);
              field[f] = next;
            }
          }
          prev_t = t_grid[k];
        }

        for (std::size_t l = 0; l < n; ++l) {
          const double phi = model.omega0 * t_grid[k] +
                             model.couplings[l] * phase_integral[n_fields == 1 ? 0 : l];
          qubit_factor[l] = std::polar(1.0, -phi);
        }
        auto& row = acc.sums[k];
        for (std::size_t e = 0; e < dim * dim; ++e) {
          Complex factor = 1.0;
          for (const auto& [l, delta] : patterns[e].deltas)
            factor *= delta > 0 ? qubit_factor[l] : std::conj(qubit_factor[l]);
          row[e] += factor;
        }
      }
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned workers =
      std::min<unsigned>(n_threads == 0 ? 1 : std::min(n_threads, hw),
                         static_cast<unsigned>(n_batches));
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_batches; ++b) run_batch(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t b = next.fetch_add(1); b < n_batches; b = next.fetch_add(1))
          run_batch(b);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  const std::vector<double> at_zero = c_l1_all_orders(rho);

  DephasingResult result;
  result.times = t_grid;
  result.states.reserve(n_times);
  result.per_order_l1.reserve(n_times);
  result.normalized.reserve(n_times);
  result.normalized_se.reserve(n_times);

  std::vector<Complex> total(dim * dim);
  for (std::size_t k = 0; k < n_times; ++k) {
    std::fill(total.begin(), total.end(), Complex{});
    for (const McAccumulator& b : batches)
      for (std::size_t e = 0; e < total.size(); ++e) total[e] += b.sums[k][e];

    ComplexMatrix state(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        state(r, c) = rho(r, c) * total[r * dim + c] / static_cast<double>(n_traj);

    const std::vector<double> l1 = c_l1_all_orders(state);
    result.per_order_l1.push_back(l1);
    result.normalized.push_back(normalize_row(l1, at_zero));

    // Batch-means standard error of the normalized curves.
    std::vector<double> se(n + 1, 0.0);
    if (n_batches > 1) {
      std::vector<std::vector<double>> batch_values;
      batch_values.reserve(n_batches);
      ComplexMatrix batch_state(dim, dim);
      for (const McAccumulator& b : batches) {
        for (std::size_t r = 0; r < dim; ++r)
          for (std::size_t c = 0; c < dim; ++c)
            batch_state(r, c) = rho(r, c) * b.sums[k][r * dim + c] / static_cast<double>(b.count);
        batch_values.push_back(normalize_row(c_l1_all_orders(batch_state), at_zero));
      }
      for (std::size_t m = 0; m <= n; ++m) {
        double mean = 0.0;
        for (const auto& v : batch_values) mean += v[m];
        mean /= static_cast<double>(n_batches);
        double var = 0.0;
        for (const auto& v : batch_values) var += (v[m] - mean) * (v[m] - mean);
        se[m] = std::sqrt(var / (static_cast<double>(n_batches) *
                                 static_cast<double>(n_batches - 1)));
      }
    }
    result.normalized_se.push_back(std::move(se));
    result.states.push_back(std::move(state));
  }
  return result;
}

DephasingResult dephase_sweep(const ComplexMatrix& rho, const std::vector<double>& times,
                              const NoiseModel& model) {
  if (times.empty()) throw EmptyGrid("dephase_sweep: empty time grid");
  model.validate();

  const std::size_t n = qubit_count_for_dimension(rho);
  const std::vector<double> at_zero = c_l1_all_orders(rho);

  DephasingResult result;
  result.times = times;
  for (double t : times) {
    ComplexMatrix state = model.topology == BathTopology::Common
                              ? apply_common(rho, t, model)
                              : apply_independent(rho, t, model);
    const std::vector<double> l1 = c_l1_all_orders(state);
    result.per_order_l1.push_back(l1);
    result.normalized.push_back(normalize_row(l1, at_zero));
    result.states.push_back(std::move(state));
  }
  result.normalized_se.assign(times.size(), std::vector<double>(n + 1, 0.0));
  return result;
}

}  // namespace cohord
