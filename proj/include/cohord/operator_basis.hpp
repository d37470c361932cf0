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

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cohord/complex_matrix.hpp"
#include "cohord/errors.hpp"

namespace cohord {

/// Single-site generators of the product-operator basis:
///   I0 = 1/2, Iplus = (sx + i sy)/2, Iminus = (sx - i sy)/2, Iz = sz/2.
/// Enumerator order fixes the lexicographic label order (0, +, -, z).
enum class Letter : std::uint8_t { I0 = 0, Plus = 1, Minus = 2, Z = 3 };

char to_char(Letter l);
Letter letter_from_char(char c);

/// The fixed 2x2 generator for a letter.
const ComplexMatrix& single_qubit_generator(Letter l);

/// A length-N word over {0, +, -, z}, qubit 1 leftmost. Identifies one
/// product operator of the basis.
class OperatorLabel {
 public:
  OperatorLabel() = default;
  explicit OperatorLabel(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  /// Parses e.g. "0+-z". Throws ParseError on unknown characters.
  explicit OperatorLabel(std::string_view word);

  /// Label with base-4 rank `index` (digit order 0,+,-,z; qubit 1 most
  /// significant), the iteration order used throughout.
  static OperatorLabel from_index(std::uint64_t index, std::size_t n_qubits);

  std::size_t n_qubits() const { return letters_.size(); }
  Letter letter(std::size_t site) const { return letters_[site]; }
  const std::vector<Letter>& letters() const { return letters_; }

  /// Number of sites carrying letter `l` (the n_s of the word).
  int count(Letter l) const;
  /// Coherence order n_+ - n_-.
  int order() const;
  /// Letterwise swap of + and - (the label of the adjoint operator).
  OperatorLabel conjugate() const;

  std::uint64_t index() const;
  std::string str() const;

  auto operator<=>(const OperatorLabel&) const = default;

 private:
  std::vector<Letter> letters_;
};

/// Coefficient map a_{j1...jN} of a state over the product-operator basis.
/// Only coefficients that are not exactly zero are stored.
struct ProductOperatorExpansion {
  std::size_t n_qubits = 0;
  std::map<OperatorLabel, Complex> coefficients;

  /// Zero for absent labels.
  Complex coefficient(const OperatorLabel& label) const;
};

/// Number of qubits for a 2^N-dimensional square matrix; throws
/// DimensionNotPowerOfTwo otherwise.
std::size_t qubit_count_for_dimension(const ComplexMatrix& m);

/// Kronecker product of the per-site generators, qubit 1 leftmost.
ComplexMatrix build_operator(const OperatorLabel& label);

/// Dual-basis weight nu(label) = prod_l nu_l, nu_l = 1/2 for {0, z} and 1
/// for {+, -}; a_label = Tr(build_operator(label)† rho) / nu(label).
double dual_weight(const OperatorLabel& label);

/// Expands rho over the basis so that reconstruct(expand(rho)) == rho.
ProductOperatorExpansion expand(const ComplexMatrix& rho);

/// Sum of a_label * build_operator(label).
ComplexMatrix reconstruct(const ProductOperatorExpansion& expansion);

/// Coherence order of matrix position (row, col): popcount(col) -
/// popcount(row), the phase winding of |row><col| under collective
/// z rotation.
int element_order(std::size_t row, std::size_t col, std::size_t n_qubits);

/// Closed-form count (2N)!/((N-m)!(N+m)!) of matrix positions with order m.
/// Defined for 0 < |m| <= N; throws OrderOutOfRange otherwise.
std::uint64_t count_order_elements(std::size_t n_qubits, int m);

namespace detail {

/// Dense coefficient tensor indexed by label rank (the carrier behind
/// expand/reconstruct, shared with the per-order tables and the
/// independent-bath channel).
std::vector<Complex> expansion_tensor(const ComplexMatrix& rho);
ComplexMatrix tensor_to_matrix(std::vector<Complex> tensor, std::size_t n_qubits);

}  // namespace detail

}  // namespace cohord
