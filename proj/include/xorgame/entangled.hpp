#pragma once

#include <array>
#include <utility>

#include "xorgame/game.hpp"
#include "xorgame/tsirelson.hpp"

namespace xorgame {

/// p[a][b] for one question pair.
struct JointOutcomeDistribution {
  std::array<std::array<double, 2>, 2> p{};

  double operator()(int a, int b) const { return p[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  double total() const { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }
};

inline constexpr std::size_t kMaxLocalDim = 64;

/// P0 = (I + M)/2, P1 = (I - M)/2. Throws NotObservable.
std::pair<ComplexMatrix, ComplexMatrix> projectors_from_observable(const Observable& obs);

/// p(a,b) = <psi| X_s^a (x) Y_t^b |psi>. Round-off negatives down to -1e-12
/// are clamped to zero.
JointOutcomeDistribution joint_outcome_distribution(const EntangledStrategy& strategy, std::size_t s, std::size_t t);

/// sum_{s,t} pi(s,t) sum_{a,b} V(a xor b|s,t) p(a,b).
double entangled_win_probability(const XorGame& game, const EntangledStrategy& strategy);

}  // namespace xorgame
