#include "doctest.h"
#include "test_support.hpp"
#include "xorgame/entangled.hpp"
#include "xorgame/error.hpp"

using namespace xorgame;
using namespace xorgame::testing;

namespace {

ComplexMatrix pauli(char which) {
  ComplexMatrix m(2, 2);
  if (which == 'X') m(0, 1) = m(1, 0) = 1.0;
  if (which == 'Z') {
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
  }
  return m;
}

ComplexVector phi_plus() {
  const double r = std::numbers::sqrt2 / 2.0;
  return {r, 0.0, 0.0, r};
}

// Random local unitary applied to Alice's half of a maximally entangled
// state, with random observables: a generic strategy that is not of the
// canonical Clifford form.
EntangledStrategy random_strategy(SplitMix64& rng, std::size_t s, std::size_t t, std::size_t dim) {
  auto random_obs = [&] {
    // U diag(+-1) U^H
    ComplexMatrix g(dim, dim);
    for (cplx& z : g.data()) z = cplx(rng.gaussian(), rng.gaussian());
    const ComplexMatrix u = orthonormalize_columns(g);
    ComplexMatrix d(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) d(i, i) = rng.bit() ? 1.0 : -1.0;
    const ComplexMatrix m = matmul(matmul(u, d), adjoint(u));
    ComplexMatrix h = m + adjoint(m);
    h *= cplx(0.5);
    return Observable{dim, h};
  };
  EntangledStrategy es;
  es.dim = dim;
  es.psi.resize(dim * dim);
  for (cplx& z : es.psi) z = cplx(rng.gaussian(), rng.gaussian());
  const double n = norm(std::span<const cplx>(es.psi));
  for (cplx& z : es.psi) z /= n;
  for (std::size_t i = 0; i < s; ++i) es.alice.push_back(random_obs());
  for (std::size_t i = 0; i < t; ++i) es.bob.push_back(random_obs());
  return es;
}

}  // namespace

TEST_CASE("projectors_from_observable") {
  const auto [z0, z1] = projectors_from_observable({2, pauli('Z')});
  CHECK(z0(0, 0) == cplx(1.0));
  CHECK(z0(1, 1) == cplx(0.0));
  CHECK(z1(1, 1) == cplx(1.0));

  const auto [x0, x1] = projectors_from_observable({2, pauli('X')});
  for (const cplx& v : x0.data()) CHECK(v == cplx(0.5));
  CHECK(max_abs_diff(matmul(x1, x1), x1) < 1e-15);
  CHECK(max_abs_diff(x0 + x1, ComplexMatrix::identity(2)) < 1e-15);

  const auto [i0, i1] = projectors_from_observable({2, ComplexMatrix::identity(2)});
  CHECK(max_abs_diff(i0, ComplexMatrix::identity(2)) == 0.0);
  CHECK(max_abs_diff(i1, ComplexMatrix(2, 2)) == 0.0);

  ComplexMatrix not_obs(2, 2);
  not_obs(0, 0) = 2.0;
  CHECK_THROWS_AS(projectors_from_observable({2, not_obs}), Error);
}

TEST_CASE("joint_outcome_distribution") {
  const EntangledStrategy chsh = observables_from_vectors(chsh_vectors());
  const auto d = joint_outcome_distribution(chsh, 0, 0);
  const double c = std::cos(std::numbers::pi / 8.0);
  CHECK(d(0, 0) == doctest::Approx(c * c / 2.0).epsilon(1e-12));
  CHECK(d(1, 1) == doctest::Approx(c * c / 2.0).epsilon(1e-12));
  CHECK(d(0, 0) == doctest::Approx(0.4267767).epsilon(1e-7));
  CHECK(d.total() == doctest::Approx(1.0).epsilon(1e-12));

  const EntangledStrategy product{2, {1.0, 0.0, 0.0, 0.0}, {{2, pauli('Z')}}, {{2, pauli('Z')}}};
  CHECK(joint_outcome_distribution(product, 0, 0)(0, 0) == doctest::Approx(1.0));

  const EntangledStrategy bell{2, phi_plus(), {{2, pauli('Z')}}, {{2, pauli('Z')}}};
  const auto b = joint_outcome_distribution(bell, 0, 0);
  CHECK(b(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b(0, 1) == 0.0);

  CHECK_THROWS_AS(joint_outcome_distribution(bell, 1, 0), Error);
}

TEST_CASE("entangled_win_probability examples") {
  const XorGame chsh = chsh_game();
  CHECK(std::abs(entangled_win_probability(chsh, observables_from_vectors(chsh_vectors())) - kChshQuantum) < 1e-6);

  SplitMix64 rng(1);
  CHECK(entangled_win_probability(all_accepting(), random_strategy(rng, 2, 2, 3)) == doctest::Approx(1.0).epsilon(1e-12));

  const EntangledStrategy zz{2, phi_plus(), {{2, pauli('Z')}, {2, pauli('Z')}}, {{2, pauli('Z')}, {2, pauli('Z')}}};
  CHECK(entangled_win_probability(chsh, zz) == doctest::Approx(0.75).epsilon(1e-15));

  CHECK_THROWS_AS(entangled_win_probability(random_game(3, 2, 1), zz), Error);
}

TEST_CASE("XOR identity, no-signaling and the SDP bound on random strategies") {
  SplitMix64 rng(2718);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t s = 1 + rng.below(3), t = 1 + rng.below(3), dim = 2 + rng.below(3);
    const XorGame g = random_game(s, t, 900 + static_cast<std::uint64_t>(trial));
    const EntangledStrategy es = random_strategy(rng, s, t, dim);
    const double win = entangled_win_probability(g, es);

    const RealMatrix cost = cost_matrix(g);
    double bias = 0.0;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < t; ++j) bias += cost(i, j) * correlation(es, i, j);
    CHECK(std::abs(win - (trivial_value(g) + 0.5 * bias)) < 1e-9);

    CHECK(win <= quantum_value(g).value + 1e-4);

    for (std::size_t i = 0; i < s; ++i)
      for (int a = 0; a < 2; ++a) {
        const auto ref = joint_outcome_distribution(es, i, 0);
        const double marginal = ref(a, 0) + ref(a, 1);
        for (std::size_t j = 1; j < t; ++j) {
          const auto d = joint_outcome_distribution(es, i, j);
          CHECK(std::abs(d(a, 0) + d(a, 1) - marginal) < 1e-9);
        }
      }
    for (std::size_t j = 0; j < t; ++j)
      for (int b = 0; b < 2; ++b) {
        const auto ref = joint_outcome_distribution(es, 0, j);
        const double marginal = ref(0, b) + ref(1, b);
        for (std::size_t i = 1; i < s; ++i) {
          const auto d = joint_outcome_distribution(es, i, j);
          CHECK(std::abs(d(0, b) + d(1, b) - marginal) < 1e-9);
        }
      }
  }
}

TEST_CASE("local dimension guard") {
  EntangledStrategy big;
  big.dim = 128;
  big.psi.assign(128 * 128, 0.0);
  big.psi[0] = 1.0;
  big.alice.push_back({128, ComplexMatrix::identity(128)});
  big.bob.push_back({128, ComplexMatrix::identity(128)});
  CHECK_THROWS_AS(joint_outcome_distribution(big, 0, 0), Error);
}
