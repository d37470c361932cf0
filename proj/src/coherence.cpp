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

#include "cohord/coherence.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "cohord/linalg.hpp"

namespace cohord {

OrderDecomposition::OrderDecomposition(std::size_t n_qubits,
                                       std::vector<ComplexMatrix> components)
    : n_qubits_(n_qubits), components_(std::move(components)) {
  if (components_.size() != 2 * n_qubits_ + 1)
    throw ShapeMismatch("OrderDecomposition: need 2N+1 components");
}

const ComplexMatrix& OrderDecomposition::component(int m) const {
  const int n = static_cast<int>(n_qubits_);
  if (m < -n || m > n) throw OrderOutOfRange("OrderDecomposition: |m| exceeds N");
  return components_[static_cast<std::size_t>(m + n)];
}

ComplexMatrix OrderDecomposition::sum() const {
  ComplexMatrix total(components_.front().rows(), components_.front().cols());
  for (const ComplexMatrix& c : components_) total += c;
  return total;
}

OrderDecomposition decompose(const ComplexMatrix& rho) {
  const std::size_t n = qubit_count_for_dimension(rho);
  const std::size_t dim = rho.rows();
  std::vector<ComplexMatrix> components(2 * n + 1, ComplexMatrix(dim, dim));
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      components[static_cast<std::size_t>(element_order(r, c, n) + static_cast<int>(n))](r, c) =
          rho(r, c);
  return OrderDecomposition(n, std::move(components));
}

ComplexMatrix project_mode(const ComplexMatrix& rho, int m) {
  const std::size_t n = qubit_count_for_dimension(rho);
  if (std::abs(m) > static_cast<int>(n)) throw OrderOutOfRange("project_mode: |m| exceeds N");
  const std::size_t dim = rho.rows();
  const std::size_t K = 2 * n + 1;

  // Z eigenvalues (N - 2 popcount)/2 per basis state.
  std::vector<double> z_diag(dim);
  for (std::size_t k = 0; k < dim; ++k)
    z_diag[k] = 0.5 * (static_cast<double>(n) - 2.0 * std::popcount(k));

  ComplexMatrix out(dim, dim);
  for (std::size_t k = 0; k < K; ++k) {
    const double x = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(K);
    const Complex mode = std::polar(1.0, -static_cast<double>(m) * x);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        const Complex rot = std::polar(1.0, -x * (z_diag[r] - z_diag[c]));
        out(r, c) += mode * rot * rho(r, c);
      }
    }
  }
  out *= 1.0 / static_cast<double>(K);
  return out;
}

double c_l1(const ComplexMatrix& rho, int m) { return c_l1(expand(rho), m); }

double c_l1(const ProductOperatorExpansion& expansion, int m) {
  if (m < 0 || m > static_cast<int>(expansion.n_qubits))
    throw OrderOutOfRange("c_l1: need 0 <= m <= N");
  double sum = 0.0;
  for (const auto& [label, value] : expansion.coefficients) {
    if (std::abs(label.order()) != m) continue;
    // Words without ladder content are diagonal operators, not coherences.
    if (m == 0 && label.count(Letter::Plus) == 0) continue;
    sum += std::abs(value);
  }
  return 0.5 * sum;
}

std::vector<double> c_l1_all_orders(const ComplexMatrix& rho) {
  const std::size_t n = qubit_count_for_dimension(rho);
  const std::vector<Complex> tensor = detail::expansion_tensor(rho);
  std::vector<double> sums(n + 1, 0.0);
  for (std::size_t idx = 0; idx < tensor.size(); ++idx) {
    if (tensor[idx] == Complex{}) continue;
    int n_plus = 0, n_minus = 0;
    for (std::size_t digits = idx; digits != 0; digits >>= 2) {
      const auto letter = static_cast<Letter>(digits & 3u);
      n_plus += letter == Letter::Plus;
      n_minus += letter == Letter::Minus;
    }
    const int m = std::abs(n_plus - n_minus);
    if (m == 0 && n_plus == 0) continue;
    sums[static_cast<std::size_t>(m)] += std::abs(tensor[idx]);
  }
  for (double& s : sums) s *= 0.5;
  return sums;
}

double c_trace(const ComplexMatrix& rho, int m) { return c_trace(decompose(rho), m); }

double c_trace(const OrderDecomposition& decomposition, int m) {
  if (m <= 0 || m > static_cast<int>(decomposition.n_qubits()))
    throw OrderOutOfRange("c_trace: need 0 < m <= N");
  return trace_norm(decomposition.component(m));
}

double mqi(const ComplexMatrix& rho, int m) { return mqi(decompose(rho), m); }

double mqi(const OrderDecomposition& decomposition, int m) {
  if (m < 0 || m > static_cast<int>(decomposition.n_qubits()))
    throw OrderOutOfRange("mqi: need 0 <= m <= N");
  // Tr(rho_{-m} rho_m) = ||rho_m||_2^2 since rho_{-m} = rho_m†.
  double sum = 0.0;
  for (const Complex& z : decomposition.component(m).entries()) sum += std::norm(z);
  return sum;
}

}  // namespace cohord
