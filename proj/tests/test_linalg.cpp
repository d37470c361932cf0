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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cohord/linalg.hpp"
#include "cohord/operator_basis.hpp"
#include "support/test_support.hpp"

using namespace cohord;
using cohord::testing::Rng;

namespace {

ComplexMatrix ghz3_projector() {
  ComplexMatrix rho(8, 8);
  rho(0, 0) = rho(0, 7) = rho(7, 0) = rho(7, 7) = 0.5;
  return rho;
}

}  // namespace

TEST_CASE("kron identity and ladder cases") {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  CHECK(approx_equal(kron(i2, i2), ComplexMatrix::identity(4), 0.0));

  const ComplexMatrix& iz = single_qubit_generator(Letter::Z);
  const ComplexMatrix zz = kron(iz, iz);
  CHECK(zz(0, 0) == Complex{0.25});
  CHECK(zz(1, 1) == Complex{-0.25});
  CHECK(zz(2, 2) == Complex{-0.25});
  CHECK(zz(3, 3) == Complex{0.25});

  const ComplexMatrix pp = kron(single_qubit_generator(Letter::Plus),
                                single_qubit_generator(Letter::Plus));
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      CHECK(pp(r, c) == ((r == 0 && c == 3) ? Complex{1.0} : Complex{}));
}

TEST_CASE("kron associativity on random triples") {
  Rng rng(11);
  for (int it = 0; it < 20; ++it) {
    const auto a = cohord::testing::random_matrix(rng, 2, 3);
    const auto b = cohord::testing::random_matrix(rng, 3, 2);
    const auto c = cohord::testing::random_matrix(rng, 4, 4);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) <= 1e-14);
  }
}

TEST_CASE("hermitian_eig on fixed matrices") {
  ComplexMatrix d(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  d(2, 2) = 3.0;
  const HermitianEigenResult r = hermitian_eig(d);
  CHECK(r.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(approx_equal(r.eigenvectors, ComplexMatrix::identity(3), 1e-12));

  ComplexMatrix ix(2, 2);
  ix(0, 1) = 0.5;
  ix(1, 0) = 0.5;
  const HermitianEigenResult rx = hermitian_eig(ix);
  CHECK(rx.eigenvalues[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(rx.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-12));

  const HermitianEigenResult rg = hermitian_eig(ghz3_projector());
  for (std::size_t k = 0; k < 7; ++k) CHECK(std::abs(rg.eigenvalues[k]) <= 1e-12);
  CHECK(rg.eigenvalues[7] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig rejects non-hermitian input") {
  ComplexMatrix a(2, 2);
  a(0, 1) = Complex{0.0, 1e-6};
  a(1, 0) = Complex{0.0, 1e-6};  // conj would be -1e-6 i
  CHECK_THROWS_AS(hermitian_eig(a), NotHermitian);
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), ShapeMismatch);
}

TEST_CASE("hermitian_eig invariants on random matrices") {
  Rng rng(17);
  for (std::size_t dim : {2u, 5u, 8u, 16u}) {
    const ComplexMatrix a = cohord::testing::random_hermitian(rng, dim);
    const HermitianEigenResult r = hermitian_eig(a);

    // residual per pair, relative to the matrix scale
    const double scale = a.max_abs();
    for (std::size_t k = 0; k < dim; ++k) {
      for (std::size_t row = 0; row < dim; ++row) {
        Complex av = 0.0;
        for (std::size_t col = 0; col < dim; ++col) av += a(row, col) * r.eigenvectors(col, k);
        CHECK(std::abs(av - r.eigenvalues[k] * r.eigenvectors(row, k)) <=
              tol::kEigResidual * scale);
      }
    }

    // unitarity and reconstruction
    CHECK(approx_equal(r.eigenvectors.adjoint() * r.eigenvectors, ComplexMatrix::identity(dim),
                       1e-10));
    ComplexMatrix recon(dim, dim);
    for (std::size_t row = 0; row < dim; ++row)
      for (std::size_t col = 0; col < dim; ++col)
        for (std::size_t k = 0; k < dim; ++k)
          recon(row, col) += r.eigenvalues[k] * r.eigenvectors(row, k) *
                             std::conj(r.eigenvectors(col, k));
    CHECK(max_abs_diff(recon, a) <= 1e-10 * std::max(1.0, scale));

    // ascending order
    for (std::size_t k = 1; k < dim; ++k) CHECK(r.eigenvalues[k - 1] <= r.eigenvalues[k]);
  }
}

TEST_CASE("trace_norm fixed values") {
  CHECK(trace_norm(ComplexMatrix::identity(5)) == doctest::Approx(5.0).epsilon(1e-12));

  ComplexMatrix rank1(2, 2);
  rank1(0, 1) = Complex{0.3, -0.4};
  CHECK(trace_norm(rank1) == doctest::Approx(0.5).epsilon(1e-12));

  // order-(+3) sector of the GHZ_3 projector: lone corner entry 1/2
  ComplexMatrix sector(8, 8);
  sector(0, 7) = 0.5;
  CHECK(trace_norm(sector) == doctest::Approx(0.5).epsilon(1e-12));
  sector = ComplexMatrix(8, 8);
  sector(7, 0) = 0.5;
  CHECK(trace_norm(sector) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("trace_norm matches SVD oracle and is unitarily invariant") {
  Rng rng(23);
  for (std::size_t dim : {2u, 4u, 8u}) {
    for (int it = 0; it < 10; ++it) {
      const ComplexMatrix a = cohord::testing::random_matrix(rng, dim, dim);
      const double tn = trace_norm(a);
      CHECK(tn == doctest::Approx(cohord::testing::trace_norm_svd_oracle(a)).epsilon(1e-9));

      const ComplexMatrix u = cohord::testing::random_unitary(rng, dim);
      const ComplexMatrix v = cohord::testing::random_unitary(rng, dim);
      CHECK(std::abs(trace_norm(u * a * v) - tn) <= 1e-9 * std::max(1.0, tn));
    }
  }
}

TEST_CASE("hs_inner fixed values and properties") {
  const ComplexMatrix& ip = single_qubit_generator(Letter::Plus);
  const ComplexMatrix& iz = single_qubit_generator(Letter::Z);
  CHECK(hs_inner(ip, ip) == Complex{1.0});
  CHECK(hs_inner(iz, iz) == Complex{0.5});
  CHECK(hs_inner(ip, iz) == Complex{});
  CHECK_THROWS_AS(hs_inner(ComplexMatrix(2, 2), ComplexMatrix(3, 3)), ShapeMismatch);

  Rng rng(31);
  for (int it = 0; it < 10; ++it) {
    const ComplexMatrix a = cohord::testing::random_matrix(rng, 4, 4);
    const Complex self = hs_inner(a, a);
    CHECK(std::abs(self.imag()) <= 1e-12 * std::abs(self));
    CHECK(self.real() >= 0.0);
  }
}
