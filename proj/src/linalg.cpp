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

#include "cohord/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace cohord {

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  return m;
}

double hermiticity_defect(const ComplexMatrix& a) {
  double defect = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = r; c < a.cols(); ++c)
      defect = std::max(defect, std::abs(a(r, c) - std::conj(a(c, r))));
  return defect;
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex v = a(ar, ac);
      if (v == Complex{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
    }
  }
  return out;
}

HermitianEigenResult hermitian_eig(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeMismatch("hermitian_eig: matrix must be square");
  const double scale = std::max(1.0, a.max_abs());
  if (hermiticity_defect(a) > tol::kHermiticity * scale)
    throw NotHermitian("hermitian_eig: asymmetry exceeds tolerance");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(a));
  if (solver.info() != Eigen::Success)
    throw NoConvergence("hermitian_eig: solver did not converge");

  const std::size_t n = a.rows();
  HermitianEigenResult result;
  result.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  result.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    // Canonical phase: first component above the noise floor made
    // real-positive, so repeated runs yield identical vectors.
    Complex phase = 1.0;
    for (std::size_t r = 0; r < n; ++r) {
      const Complex v = solver.eigenvectors()(r, k);
      if (std::abs(v) > 1e-12) {
        phase = std::conj(v) / std::abs(v);
        break;
      }
    }
    for (std::size_t r = 0; r < n; ++r)
      result.eigenvectors(r, k) = phase * solver.eigenvectors()(r, k);
  }
  return result;
}

double trace_norm(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeMismatch("trace_norm: matrix must be square");
  const ComplexMatrix gram = a.adjoint() * a;
  const HermitianEigenResult eig = hermitian_eig(gram);
  double sum = 0.0;
  for (double mu : eig.eigenvalues) sum += std::sqrt(std::max(0.0, mu));
  return sum;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch("hs_inner: shapes differ");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    sum += std::conj(a.entries()[i]) * b.entries()[i];
  return sum;
}

}  // namespace cohord
