#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/tensor.hpp"
#include "doctest.h"

using namespace gupbell;

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = Complex(g(rng), g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

}  // namespace

TEST_CASE("pauli algebra") {
  const Complex i(0.0, 1.0);
  CHECK(max_abs_diff(pauli::x() * pauli::x(), pauli::identity()) == 0.0);
  CHECK(max_abs_diff(pauli::y() * pauli::y(), pauli::identity()) == 0.0);
  CHECK(max_abs_diff(pauli::x() * pauli::y(), i * pauli::z()) == 0.0);
  CHECK(pauli::z().trace() == Complex(0.0));
  CHECK(pauli::y().is_hermitian());
}

TEST_CASE("matrix construction checks shape") {
  CHECK_THROWS_AS(ComplexMatrix(2, std::vector<Complex>(3)), Error);
  CHECK_THROWS_AS((ComplexMatrix{{1.0, 2.0}, {3.0}}), Error);
  const ComplexMatrix d = ComplexMatrix::diagonal(std::vector<double>{1.0, -2.0});
  CHECK(d(1, 1) == Complex(-2.0));
  CHECK(d(0, 1) == Complex(0.0));
}

TEST_CASE("kron layout puts the first factor on the high bit") {
  const ComplexMatrix k = kron(pauli::z(), pauli::identity());
  CHECK(k.dim() == 4);
  CHECK(k(0, 0) == Complex(1.0));
  CHECK(k(1, 1) == Complex(1.0));
  CHECK(k(2, 2) == Complex(-1.0));
  CHECK(k(3, 3) == Complex(-1.0));
}

TEST_CASE("kron mixed-product property") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_matrix(2, rng), b = random_matrix(2, rng);
    const auto c = random_matrix(2, rng), d = random_matrix(2, rng);
    CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);
  }
}

TEST_CASE("eig_hermitian reconstructs random Hermitian matrices") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {2u, 4u}) {
    for (int trial = 0; trial < 200; ++trial) {
      const ComplexMatrix m = random_hermitian(n, rng);
      const EigenSystem eig = eig_hermitian(m);
      const ComplexMatrix& v = eig.eigenvectors;
      const ComplexMatrix lam = ComplexMatrix::diagonal(eig.eigenvalues);
      CHECK(max_abs_diff(v * lam * v.adjoint(), m) < 1e-12);
      CHECK(max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(n)) < 1e-12);
      for (std::size_t k = 1; k < n; ++k) CHECK(eig.eigenvalues[k - 1] <= eig.eigenvalues[k]);
      for (std::size_t k = 0; k < n; ++k) {
        const auto col = eig.vector(k);
        std::size_t big = 0;
        for (std::size_t i = 1; i < n; ++i) {
          if (std::abs(col[i]) > std::abs(col[big]) + 1e-12) big = i;
        }
        CHECK(col[big].imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(col[big].real() > 0.0);
      }
    }
  }
}

TEST_CASE("eig_hermitian known spectrum") {
  const ComplexMatrix h = kron(pauli::x(), pauli::x()) + kron(pauli::z(), pauli::z());
  const EigenSystem eig = eig_hermitian(h);
  REQUIRE(eig.eigenvalues.size() == 4);
  CHECK(eig.eigenvalues[0] == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(std::abs(eig.eigenvalues[1]) < 1e-14);
  CHECK(std::abs(eig.eigenvalues[2]) < 1e-14);
  CHECK(eig.eigenvalues[3] == doctest::Approx(2.0).epsilon(1e-14));
  // Already-diagonal and fully degenerate input.
  const EigenSystem id = eig_hermitian(ComplexMatrix::identity(4));
  CHECK(max_abs_diff(id.eigenvectors, ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  const ComplexMatrix m{{1.0, 2.0}, {0.0, 1.0}};
  try {
    eig_hermitian(m);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("expect validates its inputs") {
  const std::vector<Complex> up{1.0, 0.0};
  CHECK(expect(up, pauli::z()) == 1.0);
  CHECK(expect(up, pauli::x()) == 0.0);
  const std::vector<Complex> unnormalized{1.0, 1.0};
  CHECK_THROWS_AS(expect(unnormalized, pauli::z()), Error);
  const std::vector<Complex> three{1.0, 0.0, 0.0};
  CHECK_THROWS_AS(expect(three, pauli::z()), Error);
  const ComplexMatrix skew{{0.0, 1.0}, {-1.0, 0.0}};
  const std::vector<Complex> plus_i{1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0))};
  CHECK_THROWS_AS(expect(plus_i, skew), Error);
}

TEST_CASE("inner and norm") {
  const std::vector<Complex> a{Complex(1.0, 1.0), 2.0};
  const std::vector<Complex> b{Complex(0.0, 1.0), 1.0};
  CHECK(inner(a, b) == Complex(3.0, 1.0));
  CHECK(norm_squared(a) == doctest::Approx(6.0));
  CHECK(sandwich(a, ComplexMatrix::identity(2), a) == Complex(6.0, 0.0));
}
