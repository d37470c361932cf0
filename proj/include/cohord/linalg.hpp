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

namespace cohord {

/// Central numeric tolerances used across the library.
namespace tol {
inline constexpr double kHermiticity = 1e-12;
inline constexpr double kEigResidual = 1e-10;
inline constexpr double kEquality = 1e-9;
/// Eigenvalue-pair cutoff q_n + q_m in the Fisher-information sum.
inline constexpr double kEigenvalueCutoff = 1e-12;
/// Threshold on I_m below which an order sector counts as empty.
inline constexpr double kMqiEps = 1e-12;
}  // namespace tol

/// Spectral decomposition of a Hermitian matrix. Eigenvalues ascending;
/// eigenvector columns carry a canonical phase (first component above the
/// noise floor made real-positive) so results are deterministic.
struct HermitianEigenResult {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;  // columns are eigenvectors
};

/// Kronecker product, left factor outer, row-major convention.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Throws NotHermitian if max |a_ij - conj(a_ji)| exceeds
/// tol::kHermiticity * max(1, max|a|), NoConvergence if the solver fails.
HermitianEigenResult hermitian_eig(const ComplexMatrix& a);

/// Sum of singular values, computed as sum of sqrt of the (clamped)
/// eigenvalues of a†a.
double trace_norm(const ComplexMatrix& a);

/// Hilbert-Schmidt inner product Tr(a†b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace cohord
