#include "xorgame/game.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <omp.h>

#include "xorgame/error.hpp"
#include "xorgame/random.hpp"

namespace xorgame {

namespace {

void check_shape(const RealMatrix& m, const XorGame& g, const char* what) {
  if (m.rows() != g.s_count || m.cols() != g.t_count) {
    std::ostringstream os;
    os << what << " is " << m.rows() << "x" << m.cols() << ", expected " << g.s_count << "x" << g.t_count;
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

void check_strategy_shape(const XorGame& game, const ClassicalStrategy& strategy) {
  if (strategy.alice.size() != game.s_count || strategy.bob.size() != game.t_count)
    throw Error(ErrorKind::DimensionMismatch, "classical strategy does not match game question counts");
}

// Scratch for one Alice assignment: weight[t][b] = sum_s pi * V(a(s) xor b | s,t).
struct BobTable {
  std::vector<double> weight;  // t_count * 2
};

void fill_bob_table(const XorGame& g, std::uint64_t alice_bits, BobTable& table) {
  table.weight.assign(g.t_count * 2, 0.0);
  for (std::size_t t = 0; t < g.t_count; ++t) {
    for (int b = 0; b < 2; ++b) {
      double acc = 0.0;
      for (std::size_t s = 0; s < g.s_count; ++s) {
        const int a = static_cast<int>((alice_bits >> (g.s_count - 1 - s)) & 1u);
        acc += g.pi(s, t) * g.predicate(a ^ b, s, t);
      }
      table.weight[2 * t + b] = acc;
    }
  }
}

struct Best {
  double value = -1.0;
  std::uint64_t index = 0;  // alice bits (MSB = s 0) followed by bob bits
};

// Strictly better value, or equal value with a smaller bit string.
bool improves(const Best& cand, const Best& cur) {
  return cand.value > cur.value || (cand.value == cur.value && cand.index < cur.index);
}

Best scan_alice(const XorGame& g, std::uint64_t alice_bits, BobTable& table) {
  fill_bob_table(g, alice_bits, table);
  Best best;
  const std::uint64_t bob_count = std::uint64_t{1} << g.t_count;
  for (std::uint64_t bob_bits = 0; bob_bits < bob_count; ++bob_bits) {
    double v = 0.0;
    for (std::size_t t = 0; t < g.t_count; ++t) {
      const int b = static_cast<int>((bob_bits >> (g.t_count - 1 - t)) & 1u);
      v += table.weight[2 * t + b];
    }
    // bob_bits ascend, so strict > already keeps the smallest index on ties.
    if (v > best.value) best = {v, (alice_bits << g.t_count) | bob_bits};
  }
  return best;
}

ClassicalStrategy decode(const XorGame& g, std::uint64_t index) {
  ClassicalStrategy st;
  st.alice.resize(g.s_count);
  st.bob.resize(g.t_count);
  const std::size_t total = g.s_count + g.t_count;
  for (std::size_t k = 0; k < total; ++k) {
    const auto bit = static_cast<std::uint8_t>((index >> (total - 1 - k)) & 1u);
    if (k < g.s_count)
      st.alice[k] = bit;
    else
      st.bob[k - g.s_count] = bit;
  }
  return st;
}

void check_brute_force(const XorGame& g) {
  if (g.s_count + g.t_count > kBruteForceLimit)
    throw Error(ErrorKind::TooLargeForBruteForce, "|S|+|T| exceeds 24");
}

}  // namespace

const XorGame& validate_game(const XorGame& game) {
  if (game.s_count == 0 || game.t_count == 0)
    throw Error(ErrorKind::DimensionMismatch, "question sets must be non-empty");
  check_shape(game.pi, game, "pi");
  check_shape(game.v0, game, "v0");
  check_shape(game.v1, game, "v1");
  for (double p : game.pi.data()) {
    if (!(p >= 0.0)) throw Error(ErrorKind::NegativeProbability, "pi has a negative or NaN entry");
  }
  const double total = compensated_sum(game.pi.data());
  if (std::abs(total - 1.0) > kNormalizationTol) {
    std::ostringstream os;
    os.precision(17);
    os << "pi sums to " << total;
    throw Error(ErrorKind::NonNormalizedDistribution, os.str());
  }
  for (const RealMatrix* m : {&game.v0, &game.v1}) {
    for (double v : m->data())
      if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::PredicateOutOfRange, "predicate weight outside [0,1]");
  }
  return game;
}

double trivial_value(const XorGame& game) {
  std::vector<double> terms;
  terms.reserve(game.s_count * game.t_count);
  for (std::size_t s = 0; s < game.s_count; ++s)
    for (std::size_t t = 0; t < game.t_count; ++t)
      terms.push_back(game.pi(s, t) * (game.v0(s, t) + game.v1(s, t)));
  return 0.5 * compensated_sum(terms);
}

double classical_win_probability(const XorGame& game, const ClassicalStrategy& strategy) {
  check_strategy_shape(game, strategy);
  double total = 0.0;
  for (std::size_t t = 0; t < game.t_count; ++t) {
    double acc = 0.0;
    for (std::size_t s = 0; s < game.s_count; ++s) {
      const int c = (strategy.alice[s] ^ strategy.bob[t]) & 1;
      acc += game.pi(s, t) * game.predicate(c, s, t);
    }
    total += acc;
  }
  return total;
}

ClassicalResult classical_value(const XorGame& game) {
  check_brute_force(game);
  const auto alice_count = static_cast<std::int64_t>(std::uint64_t{1} << game.s_count);
  const int threads = omp_get_max_threads();
  std::vector<Best> partial(static_cast<std::size_t>(threads));

#pragma omp parallel num_threads(threads)
  {
    BobTable table;
    Best local;
    // Static schedule fixes which thread sees which assignments; the final
    // reduction is order independent anyway thanks to the index tie-break.
#pragma omp for schedule(static)
    for (std::int64_t a = 0; a < alice_count; ++a) {
      const Best cand = scan_alice(game, static_cast<std::uint64_t>(a), table);
      if (improves(cand, local)) local = cand;
    }
    partial[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }

  Best best;
  for (const Best& p : partial)
    if (p.value >= 0.0 && improves(p, best)) best = p;
  return {best.value, decode(game, best.index)};
}

ClassicalResult reference::classical_value(const XorGame& game) {
  check_brute_force(game);
  const std::uint64_t alice_count = std::uint64_t{1} << game.s_count;
  BobTable table;
  Best best;
  for (std::uint64_t a = 0; a < alice_count; ++a) {
    const Best cand = scan_alice(game, a, table);
    if (improves(cand, best)) best = cand;
  }
  return {best.value, decode(game, best.index)};
}

double constant_parity_value(const XorGame& game) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint8_t a = 0; a < 2; ++a)
    for (std::uint8_t b = 0; b < 2; ++b) {
      ClassicalStrategy st{std::vector<std::uint8_t>(game.s_count, a), std::vector<std::uint8_t>(game.t_count, b)};
      best = std::max(best, classical_win_probability(game, st));
    }
  return best;
}

RealMatrix cost_matrix(const XorGame& game) {
  RealMatrix cost(game.s_count, game.t_count);
  for (std::size_t s = 0; s < game.s_count; ++s)
    for (std::size_t t = 0; t < game.t_count; ++t)
      cost(s, t) = game.pi(s, t) * (game.v0(s, t) - game.v1(s, t));
  return cost;
}

XorGame chsh_game() {
  XorGame g;
  g.name = "chsh";
  g.s_count = g.t_count = 2;
  g.pi = RealMatrix(2, 2, 0.25);
  g.v0 = RealMatrix(2, 2);
  g.v1 = RealMatrix(2, 2);
  // Accept iff a xor b = s AND t.
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t t = 0; t < 2; ++t) {
      const bool st = (s & t) != 0;
      g.v0(s, t) = st ? 0.0 : 1.0;
      g.v1(s, t) = st ? 1.0 : 0.0;
    }
  return g;
}

XorGame random_game(std::size_t s_count, std::size_t t_count, std::uint64_t seed) {
  if (s_count == 0 || t_count == 0) throw Error(ErrorKind::InvalidParams, "question counts must be positive");
  SplitMix64 rng(seed);
  XorGame g;
  g.name = "random_" + std::to_string(s_count) + "x" + std::to_string(t_count) + "_seed" + std::to_string(seed);
  g.s_count = s_count;
  g.t_count = t_count;
  g.pi = RealMatrix(s_count, t_count);
  g.v0 = RealMatrix(s_count, t_count);
  g.v1 = RealMatrix(s_count, t_count);
  for (double& p : g.pi.data()) p = rng.uniform_open0();
  const double total = compensated_sum(g.pi.data());
  for (double& p : g.pi.data()) p /= total;
  for (std::size_t s = 0; s < s_count; ++s)
    for (std::size_t t = 0; t < t_count; ++t) {
      g.v0(s, t) = rng.bit() ? 1.0 : 0.0;
      g.v1(s, t) = rng.bit() ? 1.0 : 0.0;
    }
  return g;
}

}  // namespace xorgame
