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
#include <functional>
#include <vector>

#include "cohord/complex_matrix.hpp"
#include "cohord/errors.hpp"

namespace cohord {

enum class BathTopology { Common, Independent };

/// Ornstein-Uhlenbeck autocorrelation K(dt) = (Gamma / 2) exp(-gamma |dt|);
/// gamma = 1/tau_c is the inverse correlation time, Gamma the damping rate.
/// This normalization is the one whose phase-variance integral is beta_ou.
struct OrnsteinUhlenbeckKernel {
  double Gamma = 0.0;  // damping rate, (rad/s)^2
  double gamma = 1.0;  // inverse correlation time, 1/s
};

/// Collective-Z Gaussian dephasing model: qubit splitting omega0, OU kernel
/// parameters, per-qubit coupling strengths and the bath topology. When the
/// topology is Independent, `kernels` may carry per-qubit parameters;
/// otherwise the global (Gamma, gamma) pair applies to every bath.
struct NoiseModel {
  double omega0 = 0.0;  // rad/s
  double Gamma = 0.0;
  double gamma = 1.0;
  std::vector<double> couplings;  // lambda_l, dimensionless
  BathTopology topology = BathTopology::Common;
  std::vector<OrnsteinUhlenbeckKernel> kernels;  // optional, per qubit

  static NoiseModel common_bath(std::size_t n_qubits, double Gamma, double gamma,
                                double coupling, double omega0 = 0.0);
  static NoiseModel independent_baths(std::vector<double> couplings, double Gamma,
                                      double gamma, double omega0 = 0.0);

  std::size_t n_qubits() const { return couplings.size(); }
  OrnsteinUhlenbeckKernel kernel_for(std::size_t qubit) const;
  /// The shared coupling of a common bath; throws TopologyMismatch if the
  /// couplings differ or the topology is Independent.
  double common_coupling() const;
  /// Throws ParamOutOfRange on gamma <= 0, Gamma < 0 or non-finite couplings.
  void validate() const;
};

/// OU phase variance integral beta(t) = (Gamma / (2 gamma^2)) *
/// (gamma t + e^{-gamma t} - 1). Throws NegativeTime for t < 0.
double beta_ou(double t, double Gamma, double gamma);

/// beta for the model's global kernel.
double beta(double t, const NoiseModel& model);

/// beta for an arbitrary stationary kernel K(dt), via the reduction
/// (1/2) int int K(s-s') ds ds' = int_0^t (t-u) K(u) du evaluated with
/// adaptive Simpson quadrature to relative tolerance rel_tol.
double beta_from_kernel(const std::function<double(double)>& kernel, double t,
                        double rel_tol = 1e-8);

/// Time series of an evolved state with the per-order l1 table and the
/// normalized curves Ctilde_m(t) = C_m(t) / C_m(0) (set to 1 when the
/// initial sector is empty). `normalized_se` is filled by the Monte Carlo
/// path only.
struct DephasingResult {
  std::vector<double> times;
  std::vector<ComplexMatrix> states;
  std::vector<std::vector<double>> per_order_l1;   // [time][m], m = 0..N
  std::vector<std::vector<double>> normalized;     // [time][m]
  std::vector<std::vector<double>> normalized_se;  // [time][m], Monte Carlo only
};

/// Common-bath channel: order-m sector scales by
/// e^{-i m omega0 t} e^{-m^2 lambda^2 beta(t)}. Populations are untouched.
ComplexMatrix apply_common(const ComplexMatrix& rho, double t, const NoiseModel& model);

/// Independent-baths channel: the coefficient of a word with letters j
/// scales by e^{-i m omega0 t} exp(-sum_l (delta_{+,j_l} + delta_{-,j_l})
/// lambda_l^2 beta_l(t)).
ComplexMatrix apply_independent(const ComplexMatrix& rho, double t, const NoiseModel& model);

/// Analytic channel on a time grid, dispatched on the model topology.
DephasingResult dephase_sweep(const ComplexMatrix& rho, const std::vector<double>& times,
                              const NoiseModel& model);

/// Trajectory-sampling realization of the Gaussian average. OU paths use
/// the exact stationary AR(1) update; phases accumulate by trapezoid, with
/// grid intervals refined internally so the integration step never exceeds
/// max_dt. Results are bit-stable for a fixed seed regardless of n_threads
/// (0 = single-threaded). Standard errors come from batch means over a
/// fixed trajectory partition.
DephasingResult monte_carlo_dephase(const ComplexMatrix& rho, const std::vector<double>& t_grid,
                                    const NoiseModel& model, std::size_t n_traj,
                                    std::uint64_t seed, unsigned n_threads = 0,
                                    double max_dt = 1e-3);

}  // namespace cohord
