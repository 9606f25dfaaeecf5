#pragma once

#include <cstdint>
#include <vector>

#include "xorgame/error.hpp"
#include "xorgame/game.hpp"
#include "xorgame/linalg.hpp"

namespace xorgame {

/// Real unit vectors x_s (Alice) and y_t (Bob) in R^n_dim.
struct VectorStrategy {
  std::size_t n_dim = 0;
  std::vector<RealVector> x;
  std::vector<RealVector> y;
};

inline constexpr double kUnitVectorTol = 1e-9;

/// Throws NonUnitVector or DimensionMismatch.
void validate_vector_strategy(const VectorStrategy& strategy, double tol = kUnitVectorTol);

/// Symmetric (|S|+|T|)-order matrix; rows 0..|S|-1 are Alice, the rest Bob.
struct GramMatrix {
  RealMatrix entries;
  std::size_t order() const { return entries.rows(); }
};

/// Gram matrix of the concatenated vectors (x..., y...).
GramMatrix gram_of(const VectorStrategy& strategy);

/// Sum over (s,t) of cost(s,t) * <x_s, y_t>.
double bias_objective(const RealMatrix& cost, const VectorStrategy& strategy);

/// Frobenius-nearest PSD matrix (negative eigenvalues clipped).
RealMatrix project_psd(const RealMatrix& matrix);

/// Rows of U sqrt(max(Lambda, 0)) for Z = U Lambda U^T, each normalized to
/// unit length. Row i is the vector whose Gram matrix reproduces Z.
std::vector<RealVector> gram_factor(const RealMatrix& z);

/// Factorizes a Gram matrix into unit vectors and reduces them to
/// min(|S|,|T|) dimensions by projecting the larger side onto the span of
/// the smaller side. Throws NotPSD.
VectorStrategy extract_vectors(const GramMatrix& gram, std::size_t s_count, std::size_t t_count);

/// Dimension reduction on explicit vectors: keeps the smaller side (Alice on
/// ties), projects the other side onto its span and renormalizes. Zero
/// projections map to the first basis vector of the span.
VectorStrategy reduce_to_min_side(const std::vector<RealVector>& x, const std::vector<RealVector>& y);

struct SolverConfig {
  double step_size = 0.0;  // <= 0 means 0.5 / ||cost||_F
  int max_iters = 5000;
  double tol = 1e-9;
  int restarts = 8;
  std::uint64_t seed = 0;
  int threads = 0;  // <= 0 means the OpenMP default
};

struct RestartTrace {
  std::uint64_t seed = 0;
  int gradient_iters = 0;
  bool gradient_converged = false;
  int polish_iters = 0;
  bool polish_converged = false;
  double gradient_objective = 0.0;  // best projected-gradient iterate
  double objective = 0.0;           // after polish, full dimension
  std::vector<double> polish_history;
};

struct SolverResult {
  double bias = 0.0;          // objective of `strategy`
  VectorStrategy strategy;    // reduced to min(|S|,|T|) dimensions
  GramMatrix gram;            // Gram matrix of the best polished full-dimension vectors
  int best_restart = 0;
  std::vector<RestartTrace> restarts;

  int total_iterations() const;
};

/// Raised when no restart's polish phase settled below tol. Carries the best
/// iterate found.
class DidNotConverge : public Error {
 public:
  DidNotConverge(const std::string& what, SolverResult best)
      : Error(ErrorKind::DidNotConverge, what), best_(std::move(best)) {}
  const SolverResult& best_so_far() const noexcept { return best_; }

 private:
  SolverResult best_;
};

/// Maximizes sum cost(s,t) <x_s, y_t> over unit vectors: projected gradient
/// ascent on the Gram lifting from seeded random PSD starts, followed by an
/// alternating-maximization polish. Restarts run in parallel (OpenMP); the
/// reduction picks the largest objective, lowest restart index on ties.
SolverResult maximize_bilinear(const RealMatrix& cost, const SolverConfig& config);

struct QuantumValue {
  double value = 0.0;
  VectorStrategy strategy;
  SolverResult solver;
};

/// omega_q = tau + bias / 2.
QuantumValue quantum_value(const XorGame& game, const SolverConfig& config = {});

/// Per-restart seeds: the first `restarts` outputs of SplitMix64(seed).
std::vector<std::uint64_t> restart_seeds(std::uint64_t seed, int restarts);

namespace reference {

/// Restarts run one after another on the calling thread.
SolverResult maximize_bilinear(const RealMatrix& cost, const SolverConfig& config);

}  // namespace reference

}  // namespace xorgame
