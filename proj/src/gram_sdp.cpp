#include "xorgame/gram_sdp.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

#include "xorgame/random.hpp"

namespace xorgame {

namespace {

constexpr double kDiagonalFloor = 1e-12;
constexpr double kPsdTol = 1e-8;
constexpr double kSpanDropTol = 1e-10;

void normalize_or(RealVector& v, std::size_t fallback_axis) {
  const double n = norm(v);
  if (n < 1e-15) {
    std::fill(v.begin(), v.end(), 0.0);
    v[fallback_axis] = 1.0;
    return;
  }
  for (double& c : v) c /= n;
}

double gram_objective(const RealMatrix& cost, const RealMatrix& z) {
  const std::size_t s_count = cost.rows();
  double acc = 0.0;
  for (std::size_t s = 0; s < s_count; ++s)
    for (std::size_t t = 0; t < cost.cols(); ++t) acc += cost(s, t) * z(s, s_count + t);
  return acc;
}

double bilinear(const RealMatrix& cost, const std::vector<RealVector>& x, const std::vector<RealVector>& y) {
  double acc = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s)
    for (std::size_t t = 0; t < y.size(); ++t) acc += cost(s, t) * dot(x[s], y[t]);
  return acc;
}

void unit_diagonal(RealMatrix& z) {
  const std::size_t n = z.rows();
  std::vector<double> inv_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(std::max(z(i, i), kDiagonalFloor));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) *= inv_sqrt[i] * inv_sqrt[j];
  for (std::size_t i = 0; i < n; ++i) z(i, i) = 1.0;
}

std::vector<RealVector> factor_rows(const RealMatrix& z) {
  const SymmetricEigen eig = jacobi_eigen(z);
  const std::size_t n = z.rows();
  std::vector<RealVector> rows(n, RealVector(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(std::max(eig.values[k], 0.0));
    for (std::size_t i = 0; i < n; ++i) rows[i][k] = eig.vectors(i, k) * root;
  }
  for (auto& r : rows) normalize_or(r, 0);
  return rows;
}

// Alternating maximization: x_s <- normalize(sum_t cost(s,t) y_t), then the
// same for y. Monotone for the bilinear objective.
void polish(const RealMatrix& cost, std::vector<RealVector>& x, std::vector<RealVector>& y, double tol, int max_iters,
            RestartTrace& trace) {
  const std::size_t dim = x.empty() ? 0 : x.front().size();
  double current = bilinear(cost, x, y);
  trace.polish_history.push_back(current);
  RealVector acc(dim);
  for (int it = 1; it <= max_iters; ++it) {
    for (std::size_t s = 0; s < x.size(); ++s) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t t = 0; t < y.size(); ++t)
        for (std::size_t k = 0; k < dim; ++k) acc[k] += cost(s, t) * y[t][k];
      if (norm(acc) > 1e-15) {
        x[s] = acc;
        normalize_or(x[s], 0);
      }
    }
    for (std::size_t t = 0; t < y.size(); ++t) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t s = 0; s < x.size(); ++s)
        for (std::size_t k = 0; k < dim; ++k) acc[k] += cost(s, t) * x[s][k];
      if (norm(acc) > 1e-15) {
        y[t] = acc;
        normalize_or(y[t], 0);
      }
    }
    const double next = bilinear(cost, x, y);
    trace.polish_history.push_back(next);
    trace.polish_iters = it;
    const double gain = next - current;
    current = next;
    if (gain < tol) {
      trace.polish_converged = true;
      break;
    }
  }
  trace.objective = current;
}

struct RestartOutcome {
  RestartTrace trace;
  std::vector<RealVector> x;
  std::vector<RealVector> y;
};

RestartOutcome run_restart(const RealMatrix& cost, const SolverConfig& config, std::uint64_t seed) {
  const std::size_t s_count = cost.rows();
  const std::size_t t_count = cost.cols();
  const std::size_t n = s_count + t_count;

  RestartOutcome out;
  out.trace.seed = seed;

  SplitMix64 rng(seed);
  RealMatrix g(n, n);
  for (double& v : g.data()) v = rng.gaussian();
  RealMatrix z = matmul(g, g.transpose());
  unit_diagonal(z);

  // Gradient of the objective in Gram coordinates: cost in the off-diagonal
  // blocks, symmetric.
  RealMatrix grad(n, n);
  for (std::size_t s = 0; s < s_count; ++s)
    for (std::size_t t = 0; t < t_count; ++t) grad(s, s_count + t) = grad(s_count + t, s) = cost(s, t);
  const double step = config.step_size > 0.0 ? config.step_size : 0.5 / frobenius_norm(cost);

  double current = gram_objective(cost, z);
  RealMatrix best_z = z;
  double best = current;
  for (int it = 1; it <= config.max_iters; ++it) {
    RealMatrix moved = z;
    for (std::size_t k = 0; k < moved.data().size(); ++k) moved.data()[k] += step * grad.data()[k];
    z = project_psd(moved);
    unit_diagonal(z);
    const double next = gram_objective(cost, z);
    out.trace.gradient_iters = it;
    if (next > best) {
      best = next;
      best_z = z;
    }
    const bool settled = std::abs(next - current) < config.tol;
    current = next;
    if (settled) {
      out.trace.gradient_converged = true;
      break;
    }
  }
  out.trace.gradient_objective = best;

  std::vector<RealVector> rows = factor_rows(best_z);
  out.x.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(s_count));
  out.y.assign(rows.begin() + static_cast<std::ptrdiff_t>(s_count), rows.end());
  polish(cost, out.x, out.y, config.tol, config.max_iters, out.trace);
  return out;
}

SolverResult trivial_solution(const RealMatrix& cost) {
  const std::size_t dim = std::min(cost.rows(), cost.cols());
  RealVector e1(dim, 0.0);
  e1[0] = 1.0;
  SolverResult r;
  r.strategy = {dim, std::vector<RealVector>(cost.rows(), e1), std::vector<RealVector>(cost.cols(), e1)};
  r.gram = gram_of(r.strategy);
  r.bias = 0.0;
  return r;
}

SolverResult assemble(const RealMatrix& cost, const SolverConfig& config, std::vector<RestartOutcome>& outcomes) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r)
    if (outcomes[r].trace.objective > outcomes[best].trace.objective) best = r;

  SolverResult result;
  result.best_restart = static_cast<int>(best);
  const RestartOutcome& win = outcomes[best];
  VectorStrategy full{win.x.empty() ? 0 : win.x.front().size(), win.x, win.y};
  result.gram = gram_of(full);

  // Project to min(|S|,|T|) dimensions, then polish once more there; the
  // polish can only raise the objective.
  VectorStrategy reduced = reduce_to_min_side(win.x, win.y);
  RestartTrace final_trace;
  polish(cost, reduced.x, reduced.y, config.tol, config.max_iters, final_trace);
  result.strategy = std::move(reduced);
  result.bias = bias_objective(cost, result.strategy);

  bool any_converged = false;
  for (auto& o : outcomes) {
    any_converged = any_converged || o.trace.polish_converged;
    result.restarts.push_back(std::move(o.trace));
  }
  if (!any_converged) throw DidNotConverge("alternating polish did not settle in any restart", result);
  return result;
}

void check_solver_input(const RealMatrix& cost, const SolverConfig& config) {
  if (cost.rows() == 0 || cost.cols() == 0) throw Error(ErrorKind::DimensionMismatch, "empty cost matrix");
  if (config.restarts < 1 || config.max_iters < 1 || !(config.tol > 0.0))
    throw Error(ErrorKind::InvalidParams, "solver restarts, max_iters and tol must be positive");
}

}  // namespace

void validate_vector_strategy(const VectorStrategy& strategy, double tol) {
  for (const auto* side : {&strategy.x, &strategy.y}) {
    for (const RealVector& v : *side) {
      if (v.size() != strategy.n_dim) throw Error(ErrorKind::DimensionMismatch, "vector length differs from n_dim");
      if (std::abs(norm(v) - 1.0) > tol) throw Error(ErrorKind::NonUnitVector, "strategy vector is not unit length");
    }
  }
}

GramMatrix gram_of(const VectorStrategy& strategy) {
  std::vector<const RealVector*> all;
  for (const auto& v : strategy.x) all.push_back(&v);
  for (const auto& v : strategy.y) all.push_back(&v);
  GramMatrix g{RealMatrix(all.size(), all.size())};
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i; j < all.size(); ++j) g.entries(i, j) = g.entries(j, i) = dot(*all[i], *all[j]);
  return g;
}

double bias_objective(const RealMatrix& cost, const VectorStrategy& strategy) {
  if (cost.rows() != strategy.x.size() || cost.cols() != strategy.y.size())
    throw Error(ErrorKind::DimensionMismatch, "cost matrix does not match strategy question counts");
  return bilinear(cost, strategy.x, strategy.y);
}

std::vector<RealVector> gram_factor(const RealMatrix& z) { return factor_rows(z); }

RealMatrix project_psd(const RealMatrix& matrix) {
  SymmetricEigen eig = jacobi_eigen(matrix);
  for (double& v : eig.values) v = std::max(v, 0.0);
  return recompose(eig);
}

VectorStrategy reduce_to_min_side(const std::vector<RealVector>& x, const std::vector<RealVector>& y) {
  const bool keep_alice = x.size() <= y.size();
  const auto& kept = keep_alice ? x : y;
  const auto& other = keep_alice ? y : x;
  const std::size_t target = kept.size();

  // Orthonormal basis of span(kept).
  std::vector<RealVector> basis;
  for (const RealVector& v : kept) {
    RealVector r = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const RealVector& b : basis) {
        const double c = dot(b, r);
        for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c * b[k];
      }
    const double rn = norm(r);
    if (rn > kSpanDropTol) {
      for (double& c : r) c /= rn;
      basis.push_back(std::move(r));
    }
  }

  auto coords = [&](const RealVector& v) {
    RealVector c(target, 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) c[i] = dot(basis[i], v);
    normalize_or(c, 0);
    return c;
  };

  std::vector<RealVector> kept_out;
  std::vector<RealVector> other_out;
  for (const auto& v : kept) kept_out.push_back(coords(v));
  for (const auto& v : other) other_out.push_back(coords(v));

  VectorStrategy out;
  out.n_dim = target;
  out.x = keep_alice ? std::move(kept_out) : std::move(other_out);
  out.y = keep_alice ? std::move(other_out) : std::move(kept_out);
  return out;
}

VectorStrategy extract_vectors(const GramMatrix& gram, std::size_t s_count, std::size_t t_count) {
  if (gram.order() != s_count + t_count || !gram.entries.square())
    throw Error(ErrorKind::DimensionMismatch, "Gram order differs from |S|+|T|");
  const SymmetricEigen eig = jacobi_eigen(gram.entries);
  if (!eig.values.empty() && eig.values.front() < -kPsdTol)
    throw Error(ErrorKind::NotPSD, "Gram matrix has an eigenvalue below -1e-8");
  const std::vector<RealVector> rows = factor_rows(gram.entries);
  std::vector<RealVector> x(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(s_count));
  std::vector<RealVector> y(rows.begin() + static_cast<std::ptrdiff_t>(s_count), rows.end());
  return reduce_to_min_side(x, y);
}

std::vector<std::uint64_t> restart_seeds(std::uint64_t seed, int restarts) {
  SplitMix64 mix(seed);
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(std::max(restarts, 0)));
  for (auto& s : seeds) s = mix();
  return seeds;
}

int SolverResult::total_iterations() const {
  int total = 0;
  for (const auto& r : restarts) total += r.gradient_iters + r.polish_iters;
  return total;
}

SolverResult maximize_bilinear(const RealMatrix& cost, const SolverConfig& config) {
  check_solver_input(cost, config);
  if (frobenius_norm(cost) == 0.0) return trivial_solution(cost);

  const auto seeds = restart_seeds(config.seed, config.restarts);
  std::vector<RestartOutcome> outcomes(seeds.size());
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
  const auto count = static_cast<std::int64_t>(seeds.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t r = 0; r < count; ++r) {
    outcomes[static_cast<std::size_t>(r)] = run_restart(cost, config, seeds[static_cast<std::size_t>(r)]);
  }
  return assemble(cost, config, outcomes);
}

SolverResult reference::maximize_bilinear(const RealMatrix& cost, const SolverConfig& config) {
  check_solver_input(cost, config);
  if (frobenius_norm(cost) == 0.0) return trivial_solution(cost);

  const auto seeds = restart_seeds(config.seed, config.restarts);
  std::vector<RestartOutcome> outcomes;
  for (std::uint64_t s : seeds) outcomes.push_back(run_restart(cost, config, s));
  return assemble(cost, config, outcomes);
}

QuantumValue quantum_value(const XorGame& game, const SolverConfig& config) {
  validate_game(game);
  const RealMatrix cost = cost_matrix(game);
  QuantumValue q;
  q.solver = maximize_bilinear(cost, config);
  q.strategy = q.solver.strategy;
  q.value = trivial_value(game) + 0.5 * q.solver.bias;
  return q;
}

}  // namespace xorgame
