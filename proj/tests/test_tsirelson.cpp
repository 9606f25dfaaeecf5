#include "doctest.h"
#include "test_support.hpp"
#include "xorgame/error.hpp"
#include "xorgame/tsirelson.hpp"

using namespace xorgame;
using namespace xorgame::testing;

namespace {

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

ComplexVector phi_plus() {
  const double r = std::numbers::sqrt2 / 2.0;
  return {r, 0.0, 0.0, r};
}

}  // namespace

TEST_CASE("clifford_generators small cases") {
  const auto one = clifford_generators(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].dim == 2);
  CHECK(max_abs_diff(one[0].matrix, pauli_x()) == 0.0);

  const auto two = clifford_generators(2);
  REQUIRE(two.size() == 2);
  CHECK(two[1].dim == 2);
  const ComplexMatrix anti = matmul(two[0].matrix, two[1].matrix) + matmul(two[1].matrix, two[0].matrix);
  CHECK(max_abs_diff(anti, ComplexMatrix(2, 2)) < 1e-15);

  const auto four = clifford_generators(4);
  REQUIRE(four.size() == 4);
  CHECK(four[0].dim == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const ComplexMatrix ac = matmul(four[i].matrix, four[j].matrix) + matmul(four[j].matrix, four[i].matrix);
      CHECK(max_abs_diff(ac, ComplexMatrix(4, 4)) < 1e-12);
    }
}

TEST_CASE("clifford_generators algebra for n up to 9") {
  for (int n = 1; n <= 9; ++n) {
    const auto g = clifford_generators(n);
    const std::size_t d = std::size_t{1} << ((n + 1) / 2);
    REQUIRE(g.size() == static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(g[i].dim == d);
      CHECK_NOTHROW(validate_observable(g[i]));
      const Observable t{d, g[i].matrix.transpose()};
      CHECK_NOTHROW(validate_observable(t));
      for (std::size_t j = 0; j < g.size(); ++j) {
        cplx tr{};
        const ComplexMatrix prod = matmul(g[i].matrix, g[j].matrix);
        for (std::size_t k = 0; k < d; ++k) tr += prod(k, k);
        CHECK(std::abs(tr / static_cast<double>(d) - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("clifford_generators guard") {
  CHECK_THROWS_AS(clifford_generators(0), Error);
  CHECK_THROWS_AS(clifford_generators(21), Error);
}

TEST_CASE("observables_from_vectors examples") {
  const VectorStrategy e1{1, {{1.0}}, {{1.0}}};
  const EntangledStrategy es = observables_from_vectors(e1);
  CHECK(es.dim == 2);
  CHECK(max_abs_diff(es.alice[0].matrix, pauli_x()) == 0.0);
  CHECK(max_abs_diff(es.bob[0].matrix, pauli_x()) == 0.0);
  CHECK(correlation(es, 0, 0) == doctest::Approx(1.0).epsilon(1e-15));

  const EntangledStrategy chsh = observables_from_vectors(chsh_vectors());
  const double r = std::numbers::sqrt2 / 2.0;
  CHECK(std::abs(correlation(chsh, 0, 0) - r) < 1e-10);
  CHECK(std::abs(correlation(chsh, 0, 1) - r) < 1e-10);
  CHECK(std::abs(correlation(chsh, 1, 0) - r) < 1e-10);
  CHECK(std::abs(correlation(chsh, 1, 1) + r) < 1e-10);

  const VectorStrategy perp{2, {{1.0, 0.0}}, {{0.0, 1.0}}};
  CHECK(std::abs(correlation(observables_from_vectors(perp), 0, 0)) < 1e-12);

  const VectorStrategy bad{2, {{1.0, 1.0}}, {{0.0, 1.0}}};
  try {
    observables_from_vectors(bad);
    FAIL("expected NonUnitVector");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonUnitVector);
  }
}

TEST_CASE("vectors_from_observables examples") {
  const VectorStrategy chsh = vectors_from_observables(observables_from_vectors(chsh_vectors()));
  const VectorStrategy expect = chsh_vectors();
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t t = 0; t < 2; ++t) CHECK(std::abs(dot(chsh.x[s], chsh.y[t]) - dot(expect.x[s], expect.y[t])) < 1e-6);

  EntangledStrategy product{2, {1.0, 0.0, 0.0, 0.0}, {{2, pauli_z()}}, {{2, pauli_z()}}};
  const VectorStrategy pv = vectors_from_observables(product);
  CHECK(dot(pv.x[0], pv.y[0]) == doctest::Approx(1.0).epsilon(1e-12));

  EntangledStrategy mixed{2, phi_plus(), {{2, pauli_x()}}, {{2, pauli_z()}}};
  CHECK(std::abs(dot(vectors_from_observables(mixed).x[0], vectors_from_observables(mixed).y[0])) < 1e-12);

  EntangledStrategy unnormalized{2, {1.0, 0.0, 0.0, 1.0}, {{2, pauli_x()}}, {{2, pauli_z()}}};
  try {
    vectors_from_observables(unnormalized);
    FAIL("expected NonUnitState");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonUnitState);
  }
}

TEST_CASE("round trip preserves the cross Gram block") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t s = 1 + rng.below(4), t = 1 + rng.below(4), dim = 1 + rng.below(5);
    const VectorStrategy v = random_vector_strategy(rng, s, t, dim);
    const EntangledStrategy es = observables_from_vectors(v);
    const VectorStrategy back = vectors_from_observables(es);
    CHECK(back.n_dim == s + t);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < t; ++j) {
        const double c = correlation(es, i, j);
        CHECK(std::abs(c) <= 1.0 + 1e-10);
        CHECK(std::abs(c - dot(v.x[i], v.y[j])) < 1e-9);
        CHECK(std::abs(dot(back.x[i], back.y[j]) - dot(v.x[i], v.y[j])) < 1e-6);
      }
  }
}

TEST_CASE("moment matrix of a valid strategy is a unit-diagonal Gram matrix") {
  SplitMix64 rng(8);
  const EntangledStrategy es = observables_from_vectors(random_vector_strategy(rng, 3, 2, 3));
  const RealMatrix m = moment_matrix(es);
  for (std::size_t i = 0; i < m.rows(); ++i) CHECK(m(i, i) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(jacobi_eigen(m).values.front() > -1e-10);
}
