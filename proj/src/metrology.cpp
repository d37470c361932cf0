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

#include "cohord/metrology.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "cohord/coherence.hpp"
#include "cohord/linalg.hpp"
#include "cohord/operator_basis.hpp"

namespace cohord {

namespace {

constexpr double kStateTol = 1e-8;

void require_unit_interval(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ParamOutOfRange(std::string(name) + " must lie in [0, 1]");
}

void require_range(double phi, double lo, double hi, const char* name) {
  if (!(phi >= lo && phi <= hi)) throw ParamOutOfRange(std::string(name) + " out of range");
}

std::vector<Complex> ghz_amplitudes(std::size_t n) {
  std::vector<Complex> amp(std::size_t{1} << n, 0.0);
  amp.front() = std::numbers::sqrt2 / 2.0;
  amp.back() = std::numbers::sqrt2 / 2.0;
  return amp;
}

}  // namespace

PhaseEncoding::PhaseEncoding(ComplexMatrix generator, double tau)
    : generator_(std::move(generator)), tau_(tau) {
  if (!generator_.is_square()) throw InvalidState("PhaseEncoding: generator must be square");
  const std::size_t dim = generator_.rows();
  diagonal_.resize(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (r == c) continue;
      if (std::abs(generator_(r, c)) > 1e-12)
        throw InvalidState("PhaseEncoding: generator must be diagonal");
    }
    const Complex d = generator_(r, r);
    if (std::abs(d.imag()) > 1e-12)
      throw InvalidState("PhaseEncoding: generator diagonal must be real");
    const double twice = 2.0 * d.real();
    if (std::abs(twice - std::round(twice)) > 1e-9)
      throw InvalidState("PhaseEncoding: generator entries must be half-integer");
    diagonal_[r] = d.real();
  }
}

PhaseEncoding PhaseEncoding::collective_z(std::size_t n_qubits, double tau) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  ComplexMatrix z(dim, dim);
  for (std::size_t k = 0; k < dim; ++k)
    z(k, k) = 0.5 * (static_cast<double>(n_qubits) - 2.0 * std::popcount(k));
  return PhaseEncoding(std::move(z), tau);
}

ComplexMatrix PhaseEncoding::apply(const ComplexMatrix& rho, double alpha) const {
  if (rho.rows() != diagonal_.size() || !rho.is_square())
    throw ShapeMismatch("PhaseEncoding: state and generator dimensions differ");
  ComplexMatrix out(rho.rows(), rho.cols());
  for (std::size_t r = 0; r < rho.rows(); ++r)
    for (std::size_t c = 0; c < rho.cols(); ++c)
      out(r, c) = std::polar(1.0, -alpha * (diagonal_[r] - diagonal_[c])) * rho(r, c);
  return out;
}

double qfi(const ComplexMatrix& rho0, const PhaseEncoding& enc) {
  if (rho0.rows() != enc.diagonal().size() || !rho0.is_square())
    throw ShapeMismatch("qfi: state and generator dimensions differ");
  if (std::abs(rho0.trace() - Complex{1.0}) > kStateTol)
    throw InvalidState("qfi: state trace differs from one");

  const ComplexMatrix rho_tau = enc.apply(rho0, enc.tau());
  const HermitianEigenResult eig = hermitian_eig(rho_tau);
  const std::size_t dim = rho0.rows();
  for (double q : eig.eigenvalues)
    if (q < -kStateTol) throw InvalidState("qfi: state is not positive semidefinite");

  // H in the eigenbasis: M = V† diag(h) V.
  const std::vector<double>& h = enc.diagonal();
  ComplexMatrix scaled(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) scaled(r, c) = h[r] * eig.eigenvectors(r, c);
  const ComplexMatrix h_eig = eig.eigenvectors.adjoint() * scaled;

  double sum = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      const double qa = eig.eigenvalues[a];
      const double qb = eig.eigenvalues[b];
      if (qa + qb <= tol::kEigenvalueCutoff) continue;
      const double diff = qa - qb;
      sum += 0.5 * diff * diff * std::norm(h_eig(a, b)) / (qa + qb);
    }
  }
  return sum;
}

double squared_speed(const ComplexMatrix& rho0, const PhaseEncoding& enc) {
  if (enc.tau() == 0.0) throw ZeroTau("squared_speed: tau must be nonzero");
  const ComplexMatrix rho_tau = enc.apply(rho0, enc.tau());
  const double overlap0 = hs_inner(rho0.adjoint(), rho0).real();  // Tr rho0^2
  const double overlap_tau = hs_inner(rho_tau.adjoint(), rho0).real();
  const double s = (overlap0 - overlap_tau) / (enc.tau() * enc.tau());
  return std::max(0.0, s);
}

double b_term(const ComplexMatrix& rho0, const PhaseEncoding& enc, int m) {
  if (enc.tau() == 0.0) throw ZeroTau("b_term: tau must be nonzero");
  const double tau = enc.tau();
  return 2.0 / (tau * tau) * (1.0 - std::cos(m * tau)) * mqi(rho0, m);
}

double f_i(const ComplexMatrix& rho0) {
  const std::size_t n = qubit_count_for_dimension(rho0);
  const OrderDecomposition sectors = decompose(rho0);
  double sum = 0.0;
  for (int m = 1; m <= static_cast<int>(n); ++m)
    sum += static_cast<double>(m) * m * mqi(sectors, m);
  return sum;
}

double f_i_m(const ComplexMatrix& rho0, int m) {
  return static_cast<double>(m) * m * mqi(rho0, m);
}

MetrologyReport witness(const ComplexMatrix& rho0, const PhaseEncoding& enc) {
  const std::size_t n = qubit_count_for_dimension(rho0);
  if (enc.tau() == 0.0) throw ZeroTau("witness: tau must be nonzero");
  const double tau = enc.tau();

  MetrologyReport report;
  report.threshold = static_cast<double>(n) / 4.0;
  report.f_q = qfi(rho0, enc);
  report.s_tau = squared_speed(rho0, enc);

  const OrderDecomposition sectors = decompose(rho0);
  report.i_m.resize(n + 1);
  report.b_tau_m.resize(n + 1);
  report.m_max = 0;
  report.f_i = 0.0;
  for (int m = 0; m <= static_cast<int>(n); ++m) {
    const double im = mqi(sectors, m);
    report.i_m[static_cast<std::size_t>(m)] = im;
    report.b_tau_m[static_cast<std::size_t>(m)] =
        2.0 / (tau * tau) * (1.0 - std::cos(m * tau)) * im;
    report.f_i += static_cast<double>(m) * m * im;
    if (m >= 1 && im > tol::kMqiEps) report.m_max = m;
  }
  report.f_i_mmax = static_cast<double>(report.m_max) * report.m_max *
                    report.i_m[static_cast<std::size_t>(report.m_max)];
  report.witness_b = report.b_tau_m[static_cast<std::size_t>(report.m_max)] > report.threshold;
  report.witness_fi = report.f_i_mmax > report.threshold;
  return report;
}

ComplexMatrix pure_state(const std::vector<Complex>& amplitudes) {
  const std::size_t dim = amplitudes.size();
  ComplexMatrix rho(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) rho(r, c) = amplitudes[r] * std::conj(amplitudes[c]);
  return rho;
}

ComplexMatrix make_state(const StateFamilySpec& spec) {
  constexpr std::size_t kMaxQubits = 10;
  const std::size_t n = spec.n_qubits;

  switch (spec.family) {
    case StateFamily::Ghz: {
      if (n < 1 || n > kMaxQubits) throw ParamOutOfRange("make_state: qubit count out of range");
      return pure_state(ghz_amplitudes(n));
    }
    case StateFamily::Plus: {
      if (n < 1 || n > kMaxQubits) throw ParamOutOfRange("make_state: qubit count out of range");
      const std::size_t dim = std::size_t{1} << n;
      std::vector<Complex> amp(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
      return pure_state(amp);
    }
    case StateFamily::W: {
      if (n < 2 || n > kMaxQubits) throw ParamOutOfRange("make_state: qubit count out of range");
      std::vector<Complex> amp(std::size_t{1} << n, 0.0);
      for (std::size_t l = 0; l < n; ++l)
        amp[std::size_t{1} << l] = 1.0 / std::sqrt(static_cast<double>(n));
      return pure_state(amp);
    }
    case StateFamily::BellPhiPlus:
    case StateFamily::BellPhiMinus:
    case StateFamily::BellPsiPlus:
    case StateFamily::BellPsiMinus: {
      std::vector<Complex> amp(4, 0.0);
      const double w = std::numbers::sqrt2 / 2.0;
      if (spec.family == StateFamily::BellPhiPlus) { amp[0] = w; amp[3] = w; }
      if (spec.family == StateFamily::BellPhiMinus) { amp[0] = w; amp[3] = -w; }
      if (spec.family == StateFamily::BellPsiPlus) { amp[1] = w; amp[2] = w; }
      if (spec.family == StateFamily::BellPsiMinus) { amp[1] = w; amp[2] = -w; }
      return pure_state(amp);
    }
    case StateFamily::MaximallyMixed: {
      if (n < 1 || n > kMaxQubits) throw ParamOutOfRange("make_state: qubit count out of range");
      const std::size_t dim = std::size_t{1} << n;
      ComplexMatrix rho(dim, dim);
      for (std::size_t k = 0; k < dim; ++k) rho(k, k) = 1.0 / static_cast<double>(dim);
      return rho;
    }
    case StateFamily::Example1: {
      // phi runs over the full [0, pi] arc in the figure sweeps
      require_range(spec.phi, 0.0, std::numbers::pi, "phi");
      std::vector<Complex> amp = ghz_amplitudes(3);
      for (Complex& a : amp) a *= std::sin(spec.phi);
      amp[0b001] += std::cos(spec.phi);
      return pure_state(amp);
    }
    case StateFamily::Example2: {
      require_range(spec.phi, 0.0, std::numbers::pi, "phi");
      std::vector<Complex> amp(8, 0.0);
      const double w = std::sin(spec.phi) / std::sqrt(3.0);
      amp[0b000] = std::cos(spec.phi);
      amp[0b011] = w;
      amp[0b101] = w;
      amp[0b110] = w;
      return pure_state(amp);
    }
    case StateFamily::Example3: {
      require_unit_interval(spec.p, "p");
      require_range(spec.phi, 0.0, std::numbers::pi / 2.0, "phi");
      std::vector<Complex> amp = ghz_amplitudes(3);
      for (Complex& a : amp) a *= std::cos(spec.phi);
      amp[0b001] += std::sin(spec.phi);
      ComplexMatrix rho = pure_state(amp);
      rho *= spec.p;
      for (std::size_t k = 0; k < 8; ++k) rho(k, k) += (1.0 - spec.p) / 8.0;
      return rho;
    }
    case StateFamily::Example4: {
      require_unit_interval(spec.p, "p");
      std::vector<Complex> amp(8, 0.0);
      amp[0b000] = std::numbers::sqrt2 / 2.0;
      amp[0b100] = std::numbers::sqrt2 / 2.0;
      ComplexMatrix rho = pure_state(amp);
      rho *= (1.0 - spec.p);
      rho += Complex{spec.p} * pure_state(ghz_amplitudes(3));
      return rho;
    }
    case StateFamily::Example5: {
      require_unit_interval(spec.p, "p");
      std::vector<Complex> amp(8, std::sqrt(1.0 / 8.0));
      ComplexMatrix rho = pure_state(amp);
      rho *= (1.0 - spec.p);
      rho += Complex{spec.p} * pure_state(ghz_amplitudes(3));
      return rho;
    }
  }
  throw ParamOutOfRange("make_state: unknown family");
}

double classical_baseline_qfi(std::size_t n_qubits) {
  return static_cast<double>(n_qubits) / 4.0;
}

double example3_qfi_alternate(double p, double phi) {
  const double c2 = std::cos(phi) * std::cos(phi);
  return p * p * (9.0 + c2) * c2 / (2.0 * (1.0 + 3.0 * p));
}

ClosedFormRecord closed_form(int example_id, double p, double phi, double tau) {
  if (tau == 0.0) throw ZeroTau("closed_form: tau must be nonzero");
  const double t2 = tau * tau;
  const double s_half = std::sin(0.5 * tau);
  const double s_3half = std::sin(1.5 * tau);
  ClosedFormRecord r;

  switch (example_id) {
    case 1: {
      require_range(phi, 0.0, std::numbers::pi, "phi");
      const double s2 = std::sin(phi) * std::sin(phi);
      r.f_q = (19.0 + std::cos(2.0 * phi)) * s2 / 8.0;
      r.s_tau = 1.0 / (2.0 * t2) *
                (9.0 + 3.0 * std::cos(2.0 * phi) + 8.0 * std::cos(tau) +
                 4.0 * s2 * std::cos(2.0 * tau)) *
                s2 * s_half * s_half;
      r.b = s2 * s2 * s_3half * s_3half / t2;
      r.f_i = r.f_q;
      r.f_i_mmax = 2.25 * s2 * s2;
      return r;
    }
    case 2: {
      require_range(phi, 0.0, std::numbers::pi, "phi");
      const double s22 = std::sin(2.0 * phi) * std::sin(2.0 * phi);
      const double st = std::sin(tau);
      r.f_q = s22;
      r.s_tau = s22 * st * st / t2;
      r.b = r.s_tau;
      r.f_i = s22;
      r.f_i_mmax = s22;
      return r;
    }
    case 3: {
      require_unit_interval(p, "p");
      require_range(phi, 0.0, std::numbers::pi / 2.0, "phi");
      const double c2 = std::cos(phi) * std::cos(phi);
      // 4 p^2 Var_Psi(H) / (1 + 3p), the pseudo-pure closed form;
      // example3_qfi_alternate holds the inconsistent variant.
      r.f_q = p * p * c2 * (10.0 - c2) / (1.0 + 3.0 * p);
      r.s_tau = p * p / (2.0 * t2) *
                (9.0 - 3.0 * std::cos(2.0 * phi) + 8.0 * std::cos(tau) +
                 4.0 * c2 * std::cos(2.0 * tau)) *
                c2 * s_half * s_half;
      r.b = p * p * c2 * c2 * s_3half * s_3half / t2;
      r.f_i = (19.0 - std::cos(2.0 * phi)) * p * p * c2 / 8.0;
      r.f_i_mmax = 2.25 * p * p * c2 * c2;
      return r;
    }
    case 4: {
      require_unit_interval(p, "p");
      r.f_q = (3.0 + 8.0 * p * (1.0 + 2.0 * p)) / 12.0;
      r.s_tau = (1.0 - 2.0 * p + 4.0 * p * p +
                 2.0 * p * p * (2.0 * std::cos(tau) + std::cos(2.0 * tau))) *
                s_half * s_half / t2;
      r.b = p * p * s_3half * s_3half / t2;
      r.f_i = (1.0 + 2.0 * p * (5.0 * p - 1.0)) / 4.0;
      r.f_i_mmax = 2.25 * p * p;
      return r;
    }
    case 5: {
      require_unit_interval(p, "p");
      const double onep3 = 1.0 + 3.0 * p;
      r.f_q = 0.75 * (1.0 + 2.0 * p);
      r.s_tau = (3.0 * (5.0 - 6.0 * p + 9.0 * p * p) +
                 8.0 * (1.0 + 3.0 * p * p) * std::cos(tau) +
                 onep3 * onep3 * std::cos(2.0 * tau)) *
                s_half * s_half / (8.0 * t2);
      r.b = onep3 * onep3 * s_3half * s_3half / (16.0 * t2);
      r.f_i = 3.0 / 8.0 * (2.0 + p * (5.0 * p - 1.0));
      r.f_i_mmax = 9.0 / 64.0 * onep3 * onep3;
      return r;
    }
    default:
      throw UnknownExample("closed_form: example_id must be 1..5");
  }
}

}  // namespace cohord
