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

#include <vector>

#include "cohord/complex_matrix.hpp"
#include "cohord/errors.hpp"
#include "cohord/operator_basis.hpp"

namespace cohord {

/// The (2N+1)-member family {rho_m}, m in [-N, N]. rho_m holds exactly the
/// entries of the source matrix at positions of coherence order m, and
/// rho_m† = rho_{-m}.
class OrderDecomposition {
 public:
  OrderDecomposition(std::size_t n_qubits, std::vector<ComplexMatrix> components);

  std::size_t n_qubits() const { return n_qubits_; }
  /// rho_m; throws OrderOutOfRange for |m| > N.
  const ComplexMatrix& component(int m) const;
  /// Sum of all components (equals the source matrix).
  ComplexMatrix sum() const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<ComplexMatrix> components_;  // index m + N
};

/// Splits rho into coherence-order sectors by masking entries on the
/// element_order grid.
OrderDecomposition decompose(const ComplexMatrix& rho);

/// Discrete mode-of-asymmetry projector for the collective Z generator:
///   (1/K) sum_k e^{-i m x_k} U_{Z,x_k} rho U_{Z,x_k}†,  x_k = 2 pi k / K,
/// with K = 2N+1. Exact for the integer spectrum gaps of Z; returns the
/// order-(-m) sector of `decompose` (the projector index and the sector
/// index are related by a sign flip).
ComplexMatrix project_mode(const ComplexMatrix& rho, int m);

/// l1 quantifier of order m: half the sum of |a_label| over the labels with
/// |n_+ - n_-| = m. For the m = 0 extension, words without ladder content
/// (n_+ = n_- = 0) are excluded, so populations never count as coherence.
/// Valid for 0 <= m <= N.
double c_l1(const ComplexMatrix& rho, int m);
double c_l1(const ProductOperatorExpansion& expansion, int m);

/// All l1 quantifiers at once, index m = 0..N. One basis transform instead
/// of N+1; used by the dephasing sweeps and the CLI tables.
std::vector<double> c_l1_all_orders(const ComplexMatrix& rho);

/// Trace-norm quantifier of order m: ||rho_m||_1 (same for -m by conjugate
/// symmetry). Valid for 0 < m <= N.
double c_trace(const ComplexMatrix& rho, int m);
double c_trace(const OrderDecomposition& decomposition, int m);

/// Multiple-quantum intensity I_m = Tr(rho_{-m} rho_m) = ||rho_m||_2^2.
/// Valid for 0 <= m <= N.
double mqi(const ComplexMatrix& rho, int m);
double mqi(const OrderDecomposition& decomposition, int m);

}  // namespace cohord
