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

#include <cstddef>
#include <vector>

#include "cohord/complex_matrix.hpp"
#include "cohord/errors.hpp"

namespace cohord {

/// Unitary phase imprint exp(-i tau H) with a generator that is diagonal in
/// the computational basis with half-integer entries (the collective Z and
/// its relatives).
class PhaseEncoding {
 public:
  /// Validates diagonality and half-integer entries; throws InvalidState.
  PhaseEncoding(ComplexMatrix generator, double tau);

  static PhaseEncoding collective_z(std::size_t n_qubits, double tau);

  const ComplexMatrix& generator() const { return generator_; }
  const std::vector<double>& diagonal() const { return diagonal_; }
  double tau() const { return tau_; }
  PhaseEncoding with_tau(double tau) const { return PhaseEncoding(generator_, tau); }

  /// U_alpha rho U_alpha† with U_alpha = exp(-i alpha H).
  ComplexMatrix apply(const ComplexMatrix& rho, double alpha) const;

 private:
  ComplexMatrix generator_;
  std::vector<double> diagonal_;
  double tau_ = 0.0;
};

/// Everything the witness evaluation produces. Arrays are indexed m = 0..N.
struct MetrologyReport {
  double f_q = 0.0;
  double s_tau = 0.0;
  std::vector<double> i_m;
  std::vector<double> b_tau_m;
  double f_i = 0.0;
  double f_i_mmax = 0.0;
  int m_max = 0;
  bool witness_b = false;
  bool witness_fi = false;
  double threshold = 0.0;  // N/4
};

/// Quantum Fisher information of the encoded family, normalized so pure
/// states give Var(H). Throws InvalidState for non-PSD / non-unit-trace
/// input (beyond 1e-8).
double qfi(const ComplexMatrix& rho0, const PhaseEncoding& enc);

/// Squared speed (1/tau^2)[Tr rho0^2 - Tr(rho_tau rho0)], clamped at 0.
/// Throws ZeroTau when the encoding carries tau = 0.
double squared_speed(const ComplexMatrix& rho0, const PhaseEncoding& enc);

/// B_{tau,m} = (2/tau^2)(1 - cos(m tau)) I_m(rho0).
double b_term(const ComplexMatrix& rho0, const PhaseEncoding& enc, int m);

/// F_I = sum_m m^2 I_m and its single-order terms.
double f_i(const ComplexMatrix& rho0);
double f_i_m(const ComplexMatrix& rho0, int m);

/// Full report with the advantage witness of both lower bounds against the
/// separable threshold N/4. The criterion is sufficient only; false never
/// certifies the absence of an advantage.
MetrologyReport witness(const ComplexMatrix& rho0, const PhaseEncoding& enc);

enum class StateFamily {
  Ghz,             // (|0...0> + |1...1>)/sqrt(2)
  Plus,            // |+>^(x)N
  W,               // single-excitation W state
  BellPhiPlus,     // (|00> + |11>)/sqrt(2)
  BellPhiMinus,    // (|00> - |11>)/sqrt(2)
  BellPsiPlus,     // (|01> + |10>)/sqrt(2)
  BellPsiMinus,    // (|01> - |10>)/sqrt(2)
  MaximallyMixed,  // 1/2^N
  Example1,        // cos(phi)|001> + sin(phi)|GHZ_3>
  Example2,        // cos(phi)|000> + sin(phi)(|011>+|101>+|110>)/sqrt(3)
  Example3,        // (1-p)/8 1 + p |Psi><Psi|, Psi = cos(phi)|GHZ_3> + sin(phi)|001>
  Example4,        // (1-p)|+00><+00| + p |GHZ_3><GHZ_3|
  Example5,        // (1-p)|+++><+++| + p |GHZ_3><GHZ_3|
};

struct StateFamilySpec {
  StateFamily family = StateFamily::Ghz;
  std::size_t n_qubits = 3;  // ignored by the three-qubit example families
  double p = 0.0;
  double phi = 0.0;
};

/// Density-matrix factory for the named families. Throws ParamOutOfRange
/// for parameters outside their declared ranges.
ComplexMatrix make_state(const StateFamilySpec& spec);

/// Pure-state density matrix |psi><psi| from amplitudes.
ComplexMatrix pure_state(const std::vector<Complex>& amplitudes);

struct ClosedFormRecord {
  double f_q = 0.0;
  double s_tau = 0.0;
  double b = 0.0;  // B_{tau, m_max}
  double f_i = 0.0;
  double f_i_mmax = 0.0;
};

/// Analytic closed forms for the five example families. Throws
/// UnknownExample / ParamOutOfRange.
ClosedFormRecord closed_form(int example_id, double p, double phi, double tau);

/// An alternate closed form in circulation for the Example 3 Fisher
/// information. It disagrees with the spectral computation by up to 44%
/// at p = 1; kept only so tests can demonstrate the discrepancy. Never
/// use it for fixtures.
double example3_qfi_alternate(double p, double phi);

/// QFI of the uniform-superposition baseline |+>^(x)N (equals N/4).
double classical_baseline_qfi(std::size_t n_qubits);

}  // namespace cohord
