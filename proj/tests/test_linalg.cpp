#include "doctest.h"
#include "xorgame/error.hpp"
#include "xorgame/linalg.hpp"
#include "xorgame/random.hpp"

using namespace xorgame;

namespace {

RealMatrix random_symmetric(SplitMix64& rng, std::size_t n) {
  RealMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = rng.gaussian();
  return a;
}

}  // namespace

TEST_CASE("jacobi_eigen on a 2x2 with known spectrum") {
  RealMatrix a(2, 2);
  a(0, 0) = 2.0;
  a(0, 1) = a(1, 0) = 1.0;
  a(1, 1) = 2.0;
  const auto eig = jacobi_eigen(a);
  CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eig.values[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::abs(eig.vectors(0, 1)) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("jacobi_eigen reconstructs random symmetric matrices") {
  SplitMix64 rng(11);
  for (std::size_t n : {1u, 3u, 6u, 12u}) {
    const RealMatrix a = random_symmetric(rng, n);
    const auto eig = jacobi_eigen(a);
    CHECK(max_abs_diff(recompose(eig), a) < 1e-10);
    for (std::size_t k = 1; k < n; ++k) CHECK(eig.values[k - 1] <= eig.values[k]);
    const RealMatrix vtv = matmul(eig.vectors.transpose(), eig.vectors);
    CHECK(max_abs_diff(vtv, RealMatrix::identity(n)) < 1e-12);
  }
}

TEST_CASE("jacobi_eigen rejects asymmetric input") {
  RealMatrix a(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(jacobi_eigen(a), Error);
  try {
    jacobi_eigen(a);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSymmetric);
  }
}

TEST_CASE("orthonormalize_columns yields a unitary with positive R diagonal") {
  SplitMix64 rng(5);
  ComplexMatrix g(4, 4);
  for (cplx& z : g.data()) z = cplx(rng.gaussian(), rng.gaussian());
  const ComplexMatrix q = orthonormalize_columns(g);
  CHECK(max_abs_diff(matmul(adjoint(q), q), ComplexMatrix::identity(4)) < 1e-12);
  // R = Q^H G is upper triangular with positive real diagonal.
  const ComplexMatrix r = matmul(adjoint(q), g);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(r(i, i).real() > 0.0);
    CHECK(std::abs(r(i, i).imag()) < 1e-12);
    for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(r(i, j)) < 1e-12);
  }
}

TEST_CASE("compensated_sum recovers cancelled low-order terms") {
  std::vector<double> v{1.0, 1e-16, 1e-16, -1.0};
  CHECK(compensated_sum(v) == doctest::Approx(2e-16).epsilon(1e-6));
}

TEST_CASE("kron matches the block definition") {
  ComplexMatrix a(2, 2), b = ComplexMatrix::identity(2);
  a(0, 1) = 1.0;
  a(1, 0) = 2.0;
  const ComplexMatrix k = kron(a, b);
  CHECK(k(0, 2) == cplx(1.0));
  CHECK(k(1, 3) == cplx(1.0));
  CHECK(k(2, 0) == cplx(2.0));
  CHECK(k(0, 0) == cplx(0.0));
}
