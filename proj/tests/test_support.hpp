#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "xorgame/game.hpp"
#include "xorgame/gram_sdp.hpp"
#include "xorgame/random.hpp"

namespace xorgame::testing {

inline const double kChshQuantum = (2.0 + std::numbers::sqrt2) / 4.0;

inline XorGame uniform_game(std::size_t s, std::size_t t, double v0, double v1, const char* name) {
  XorGame g;
  g.name = name;
  g.s_count = s;
  g.t_count = t;
  g.pi = RealMatrix(s, t, 1.0 / static_cast<double>(s * t));
  g.v0 = RealMatrix(s, t, v0);
  g.v1 = RealMatrix(s, t, v1);
  return g;
}

inline XorGame all_accepting(std::size_t s = 2, std::size_t t = 2) { return uniform_game(s, t, 1.0, 1.0, "accept_all"); }
inline XorGame even_parity(std::size_t s = 2, std::size_t t = 2) { return uniform_game(s, t, 1.0, 0.0, "even_parity"); }

/// Plain enumeration oracle: every (alice, bob) bit assignment, win
/// probability summed pair by pair in row-major order. Returns the value
/// only.
inline double brute_force_classical(const XorGame& g) {
  const std::size_t n = g.s_count + g.t_count;
  double best = -1.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double v = 0.0;
    for (std::size_t s = 0; s < g.s_count; ++s)
      for (std::size_t t = 0; t < g.t_count; ++t) {
        const int a = static_cast<int>((mask >> s) & 1u);
        const int b = static_cast<int>((mask >> (g.s_count + t)) & 1u);
        v += g.pi(s, t) * ((a ^ b) == 0 ? g.v0(s, t) : g.v1(s, t));
      }
    best = std::max(best, v);
  }
  return best;
}

/// Optimal CHSH vectors in the plane.
inline VectorStrategy chsh_vectors() {
  const double r = std::numbers::sqrt2 / 2.0;
  return {2, {{1.0, 0.0}, {0.0, 1.0}}, {{r, r}, {r, -r}}};
}

inline RealVector random_unit(SplitMix64& rng, std::size_t dim) {
  RealVector v(dim);
  double n = 0.0;
  do {
    for (double& c : v) c = rng.gaussian();
    n = norm(v);
  } while (n < 1e-6);
  for (double& c : v) c /= n;
  return v;
}

inline VectorStrategy random_vector_strategy(SplitMix64& rng, std::size_t s, std::size_t t, std::size_t dim) {
  VectorStrategy vs{dim, {}, {}};
  for (std::size_t i = 0; i < s; ++i) vs.x.push_back(random_unit(rng, dim));
  for (std::size_t i = 0; i < t; ++i) vs.y.push_back(random_unit(rng, dim));
  return vs;
}

/// Value of a one-parameter family of qubit strategies on the maximally
/// entangled state: Alice measures at angles 0 and pi/2, Bob at +phi and
/// -phi in the same plane, so each correlation is cos(angle difference).
/// Scanned on a uniform grid; used as an independent CHSH oracle.
inline double chsh_angle_grid_search(const XorGame& g, int points) {
  const double alice[2] = {0.0, std::numbers::pi / 2.0};
  double best = 0.0;
  for (int k = 0; k < points; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / points;
    const double bob[2] = {phi, -phi};
    double v = 0.0;
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t t = 0; t < 2; ++t) {
        const double corr = std::cos(alice[s] - bob[t]);
        // Same parity with probability (1 + corr)/2.
        v += g.pi(s, t) * (g.v0(s, t) * (1.0 + corr) / 2.0 + g.v1(s, t) * (1.0 - corr) / 2.0);
      }
    best = std::max(best, v);
  }
  return best;
}

}  // namespace xorgame::testing
