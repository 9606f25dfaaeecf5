#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xorgame/linalg.hpp"

namespace xorgame {

/// A two-prover XOR game: questions (s,t) drawn from `pi`, and the verifier
/// accepts answers with parity c with weight v0 (c = 0) or v1 (c = 1).
/// Predicate weights may be fractional (randomized predicates).
struct XorGame {
  std::string name;
  std::size_t s_count = 0;
  std::size_t t_count = 0;
  RealMatrix pi;
  RealMatrix v0;
  RealMatrix v1;

  double predicate(int parity, std::size_t s, std::size_t t) const {
    return parity == 0 ? v0(s, t) : v1(s, t);
  }
};

/// Deterministic answers a(s), b(t).
struct ClassicalStrategy {
  std::vector<std::uint8_t> alice;
  std::vector<std::uint8_t> bob;

  friend bool operator==(const ClassicalStrategy&, const ClassicalStrategy&) = default;
};

inline constexpr double kNormalizationTol = 1e-12;
inline constexpr std::size_t kBruteForceLimit = 24;

/// Returns the game unchanged or throws NonNormalizedDistribution,
/// NegativeProbability, PredicateOutOfRange or DimensionMismatch.
const XorGame& validate_game(const XorGame& game);

/// Value of answering uniformly at random, ignoring the questions.
double trivial_value(const XorGame& game);

double classical_win_probability(const XorGame& game, const ClassicalStrategy& strategy);

struct ClassicalResult {
  double value = 0.0;
  ClassicalStrategy strategy;
};

/// Exhaustive maximum over all 2^(|S|+|T|) deterministic strategies. Ties go
/// to the lexicographically smallest alice||bob bit string. Enumeration over
/// Alice's assignments runs under OpenMP; the result does not depend on the
/// thread count.
ClassicalResult classical_value(const XorGame& game);

/// Best of the four constant-answer strategies (a = const, b = const).
double constant_parity_value(const XorGame& game);

/// cost(s,t) = pi(s,t) * (V(0|s,t) - V(1|s,t)).
RealMatrix cost_matrix(const XorGame& game);

XorGame chsh_game();

/// Seeded random game: strictly positive normalized pi, independent {0,1}
/// predicate bits.
XorGame random_game(std::size_t s_count, std::size_t t_count, std::uint64_t seed);

namespace reference {

/// Single-threaded enumeration with the same tie-break as classical_value.
ClassicalResult classical_value(const XorGame& game);

}  // namespace reference

}  // namespace xorgame
