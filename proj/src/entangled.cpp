#include "xorgame/entangled.hpp"

#include "xorgame/error.hpp"

namespace xorgame {

namespace {

constexpr double kNegativeClamp = 1e-12;

void check_local_dim(const EntangledStrategy& strategy) {
  if (strategy.dim > kMaxLocalDim) throw Error(ErrorKind::DimensionGuardExceeded, "local dimension above 64");
}

}  // namespace

std::pair<ComplexMatrix, ComplexMatrix> projectors_from_observable(const Observable& obs) {
  validate_observable(obs);
  const ComplexMatrix id = ComplexMatrix::identity(obs.dim);
  ComplexMatrix p0 = id + obs.matrix;
  ComplexMatrix p1 = id - obs.matrix;
  p0 *= cplx(0.5);
  p1 *= cplx(0.5);
  return {std::move(p0), std::move(p1)};
}

JointOutcomeDistribution joint_outcome_distribution(const EntangledStrategy& strategy, std::size_t s, std::size_t t) {
  if (s >= strategy.alice.size() || t >= strategy.bob.size())
    throw Error(ErrorKind::IndexOutOfRange, "question index out of range");
  check_local_dim(strategy);
  const auto [x0, x1] = projectors_from_observable(strategy.alice[s]);
  const auto [y0, y1] = projectors_from_observable(strategy.bob[t]);

  JointOutcomeDistribution dist;
  for (int b = 0; b < 2; ++b) {
    const ComplexVector bob_side = apply_bob(b == 0 ? y0 : y1, strategy.psi, strategy.dim);
    for (int a = 0; a < 2; ++a) {
      const ComplexVector both = apply_alice(a == 0 ? x0 : x1, bob_side, strategy.dim);
      double p = inner(strategy.psi, both).real();
      if (p < 0.0 && p >= -kNegativeClamp) p = 0.0;
      dist.p[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = p;
    }
  }
  return dist;
}

double entangled_win_probability(const XorGame& game, const EntangledStrategy& strategy) {
  if (strategy.alice.size() != game.s_count || strategy.bob.size() != game.t_count)
    throw Error(ErrorKind::DimensionMismatch, "strategy observable counts differ from game question counts");
  validate_entangled_strategy(strategy);
  double total = 0.0;
  for (std::size_t s = 0; s < game.s_count; ++s)
    for (std::size_t t = 0; t < game.t_count; ++t) {
      const JointOutcomeDistribution d = joint_outcome_distribution(strategy, s, t);
      double acc = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) acc += game.predicate(a ^ b, s, t) * d(a, b);
      total += game.pi(s, t) * acc;
    }
  return total;
}

}  // namespace xorgame
