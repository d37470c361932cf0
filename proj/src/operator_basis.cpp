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

#include "cohord/operator_basis.hpp"

#include <array>
#include <bit>
#include <cmath>

#include "cohord/linalg.hpp"

namespace cohord {

namespace {

std::array<ComplexMatrix, 4> make_generators() {
  using namespace std::complex_literals;
  ComplexMatrix i0(2, 2), iplus(2, 2), iminus(2, 2), iz(2, 2);
  i0(0, 0) = 0.5;
  i0(1, 1) = 0.5;
  iplus(0, 1) = 1.0;   // (sx + i sy)/2 = |0><1|
  iminus(1, 0) = 1.0;  // (sx - i sy)/2 = |1><0|
  iz(0, 0) = 0.5;
  iz(1, 1) = -0.5;
  return {i0, iplus, iminus, iz};
}

const std::array<ComplexMatrix, 4>& generators() {
  static const std::array<ComplexMatrix, 4> g = make_generators();
  return g;
}

}  // namespace

char to_char(Letter l) {
  switch (l) {
    case Letter::I0: return '0';
    case Letter::Plus: return '+';
    case Letter::Minus: return '-';
    case Letter::Z: return 'z';
  }
  return '?';
}

Letter letter_from_char(char c) {
  switch (c) {
    case '0': return Letter::I0;
    case '+': return Letter::Plus;
    case '-': return Letter::Minus;
    case 'z': case 'Z': return Letter::Z;
    default: throw ParseError(std::string("unknown operator letter '") + c + "'");
  }
}

const ComplexMatrix& single_qubit_generator(Letter l) {
  return generators()[static_cast<std::size_t>(l)];
}

OperatorLabel::OperatorLabel(std::string_view word) {
  letters_.reserve(word.size());
  for (char c : word) letters_.push_back(letter_from_char(c));
}

OperatorLabel OperatorLabel::from_index(std::uint64_t index, std::size_t n_qubits) {
  std::vector<Letter> letters(n_qubits);
  for (std::size_t site = n_qubits; site-- > 0;) {
    letters[site] = static_cast<Letter>(index & 3u);
    index >>= 2;
  }
  return OperatorLabel(std::move(letters));
}

int OperatorLabel::count(Letter l) const {
  int n = 0;
  for (Letter x : letters_)
    if (x == l) ++n;
  return n;
}

int OperatorLabel::order() const { return count(Letter::Plus) - count(Letter::Minus); }

OperatorLabel OperatorLabel::conjugate() const {
  std::vector<Letter> out(letters_);
  for (Letter& l : out) {
    if (l == Letter::Plus)
      l = Letter::Minus;
    else if (l == Letter::Minus)
      l = Letter::Plus;
  }
  return OperatorLabel(std::move(out));
}

std::uint64_t OperatorLabel::index() const {
  std::uint64_t idx = 0;
  for (Letter l : letters_) idx = (idx << 2) | static_cast<std::uint64_t>(l);
  return idx;
}

std::string OperatorLabel::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(to_char(l));
  return s;
}

Complex ProductOperatorExpansion::coefficient(const OperatorLabel& label) const {
  auto it = coefficients.find(label);
  return it == coefficients.end() ? Complex{} : it->second;
}

std::size_t qubit_count_for_dimension(const ComplexMatrix& m) {
  if (!m.is_square() || m.rows() == 0 || !std::has_single_bit(m.rows()))
    throw DimensionNotPowerOfTwo("matrix dimension is not a positive power of two");
  return static_cast<std::size_t>(std::countr_zero(m.rows()));
}

ComplexMatrix build_operator(const OperatorLabel& label) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (Letter l : label.letters()) out = kron(out, single_qubit_generator(l));
  return out;
}

double dual_weight(const OperatorLabel& label) {
  return std::ldexp(1.0, -(label.count(Letter::I0) + label.count(Letter::Z)));
}

namespace {

// Label rank of matrix position (r, c): the digit for site l is 2*r_l + c_l,
// which is also the letter rank once the per-site transform has run.
std::size_t interleaved_index(std::size_t r, std::size_t c, std::size_t n) {
  std::size_t idx = 0;
  for (std::size_t site = 0; site < n; ++site) {
    const std::size_t shift = n - 1 - site;
    idx = (idx << 2) | (((r >> shift) & 1u) << 1 | ((c >> shift) & 1u));
  }
  return idx;
}

}  // namespace

namespace detail {

// The dual-basis contraction factorizes per site, so the whole expansion is
// N sweeps of an in-place 4-point transform along one tensor axis:
//   (e00, e01, e10, e11) -> (a_0, a_+, a_-, a_z) = (e00+e11, e01, e10, e00-e11)
// which evaluates a_label = Tr(build_operator(label)† rho) / nu(label) for
// every label at once.
std::vector<Complex> expansion_tensor(const ComplexMatrix& rho) {
  const std::size_t n = qubit_count_for_dimension(rho);
  const std::size_t dim = rho.rows();

  std::vector<Complex> tensor(dim * dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) tensor[interleaved_index(r, c, n)] = rho(r, c);

  for (std::size_t site = 0; site < n; ++site) {
    const std::size_t stride = std::size_t{1} << (2 * (n - 1 - site));
    for (std::size_t block = 0; block < tensor.size(); block += 4 * stride) {
      for (std::size_t off = 0; off < stride; ++off) {
        Complex* p = tensor.data() + block + off;
        const Complex e00 = p[0];
        const Complex e11 = p[3 * stride];
        p[0] = e00 + e11;
        p[3 * stride] = e00 - e11;
      }
    }
  }
  return tensor;
}

ComplexMatrix tensor_to_matrix(std::vector<Complex> tensor, std::size_t n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  for (std::size_t site = 0; site < n_qubits; ++site) {
    const std::size_t stride = std::size_t{1} << (2 * (n_qubits - 1 - site));
    for (std::size_t block = 0; block < tensor.size(); block += 4 * stride) {
      for (std::size_t off = 0; off < stride; ++off) {
        Complex* p = tensor.data() + block + off;
        const Complex a0 = p[0];
        const Complex az = p[3 * stride];
        p[0] = 0.5 * (a0 + az);
        p[3 * stride] = 0.5 * (a0 - az);
      }
    }
  }

  ComplexMatrix rho(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) rho(r, c) = tensor[interleaved_index(r, c, n_qubits)];
  return rho;
}

}  // namespace detail

ProductOperatorExpansion expand(const ComplexMatrix& rho) {
  const std::size_t n = qubit_count_for_dimension(rho);
  const std::vector<Complex> tensor = detail::expansion_tensor(rho);

  ProductOperatorExpansion expansion;
  expansion.n_qubits = n;
  for (std::size_t idx = 0; idx < tensor.size(); ++idx) {
    if (tensor[idx] == Complex{}) continue;
    expansion.coefficients.emplace(OperatorLabel::from_index(idx, n), tensor[idx]);
  }
  return expansion;
}

ComplexMatrix reconstruct(const ProductOperatorExpansion& expansion) {
  const std::size_t dim = std::size_t{1} << expansion.n_qubits;
  std::vector<Complex> tensor(dim * dim);
  for (const auto& [label, value] : expansion.coefficients) tensor[label.index()] = value;
  return detail::tensor_to_matrix(std::move(tensor), expansion.n_qubits);
}

int element_order(std::size_t row, std::size_t col, std::size_t n_qubits) {
  (void)n_qubits;
  return std::popcount(col) - std::popcount(row);
}

std::uint64_t count_order_elements(std::size_t n_qubits, int m) {
  const int n = static_cast<int>(n_qubits);
  const int mag = std::abs(m);
  if (mag == 0 || mag > n)
    throw OrderOutOfRange("count_order_elements: need 0 < |m| <= N");
  // (2N)!/((N-m)!(N+m)!) = C(2N, N-|m|), evaluated as a stable product.
  std::uint64_t value = 1;
  const int k = n - mag;
  for (int i = 1; i <= k; ++i) value = value * static_cast<std::uint64_t>(2 * n - k + i) / i;
  return value;
}

}  // namespace cohord
