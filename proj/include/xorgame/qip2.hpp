#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "xorgame/game.hpp"
#include "xorgame/gram_sdp.hpp"
#include "xorgame/linalg.hpp"

namespace xorgame {

// Single-prover simulation of a two-prover XOR game. The verifier holds a
// flag qubit V, the message register M is indexed by S' u T' (flag bit plus
// question), and the prover keeps a private register P.

/// A basis label of M: flag 0 carries an Alice question, flag 1 a Bob question.
struct MessageIndex {
  std::uint8_t flag = 0;
  std::size_t question = 0;
};

struct ProtocolDims {
  std::size_t s_count = 0;
  std::size_t t_count = 0;
  std::size_t p_dim = 1;

  std::size_t m_dim() const { return s_count + t_count; }
  std::size_t vm_dim() const { return 2 * m_dim(); }
  std::size_t total() const { return vm_dim() * p_dim; }

  /// Position of `u` in M. Throws IndexOutOfRange.
  std::size_t slot(MessageIndex u) const;
  /// Flat index of |v>|u>|p>.
  std::size_t index(std::size_t v, std::size_t m_slot, std::size_t p) const { return (v * m_dim() + m_slot) * p_dim + p; }

  friend bool operator==(const ProtocolDims&, const ProtocolDims&) = default;
};

/// Amplitudes on V (x) M (x) P.
struct ProtocolState {
  ProtocolDims dims;
  ComplexVector amplitudes;
};

struct HonestProver {
  ClassicalStrategy strategy;
};

/// Answers with |0s>|x_s> and |1t>|y_t>: the rejection-free form.
struct VectorProver {
  VectorStrategy strategy;
};

/// Arbitrary unitary on M (x) P, dimension (|S|+|T|) * p_dim.
struct UnitaryProver {
  ComplexMatrix unitary;
  std::size_t p_dim = 1;
};

using ProverAction = std::variant<HonestProver, VectorProver, UnitaryProver>;

/// Projectors on V (x) M; the prover register is untouched.
struct VerifierMeasurement {
  ComplexMatrix accept0;  // |Psi+_st><Psi+_st|
  ComplexMatrix accept1;  // |Psi-_st><Psi-_st|
  ComplexMatrix reject;   // I - accept0 - accept1
};

struct OutcomeDistribution {
  double p0 = 0.0;
  double p1 = 0.0;
  double reject = 0.0;

  double parity(int c) const { return c == 0 ? p0 : p1; }
};

ProtocolState build_initial_state(const XorGame& game, std::size_t s, std::size_t t, std::size_t p_dim);

VerifierMeasurement verifier_measurement(const XorGame& game, std::size_t s, std::size_t t);

/// Phase (-1)^a(s') on every flag-0 slot and (-1)^b(t') on every flag-1 slot.
ProtocolState apply_honest_prover(const ProtocolState& state, const ClassicalStrategy& strategy, std::size_t s,
                                  std::size_t t);

ProtocolState apply_prover(const ProtocolState& state, const ProverAction& action, std::size_t s, std::size_t t);

/// (|0>|phi_s> + |1>|phi_t>)/sqrt(2) for arbitrary prover answers
/// phi = sum_u |u>|alpha_u>, given as (|S|+|T|) x p_dim matrices with row u
/// holding alpha_u. Throws NonUnitState if the result is not normalized.
ProtocolState dishonest_state(const ProtocolDims& dims, const ComplexMatrix& phi_s, const ComplexMatrix& phi_t);

/// p_m = <Phi| P_m (x) I_P |Phi>, each computed from its own projector.
OutcomeDistribution outcome_distribution(const ProtocolState& state, const VerifierMeasurement& meas);

/// Closed-form outcome probabilities from the two answer vectors that the
/// verifier's projectors can see (alpha^s_s and alpha^t_t).
OutcomeDistribution predicted_outcomes(std::span<const cplx> alpha_ss, std::span<const cplx> alpha_tt);

/// 1/2 sum_{s,t,c} pi V(c|s,t) (1 + (-1)^c <x_s, y_t>), straight from the formula.
double simulated_value(const XorGame& game, const VectorStrategy& strategy);

struct PairOutcome {
  std::size_t s = 0;
  std::size_t t = 0;
  OutcomeDistribution outcome;
};

struct ProtocolRun {
  std::vector<PairOutcome> pairs;  // row-major over (s,t)
  double acceptance = 0.0;         // sum pi sum_c V(c|s,t) p_c
};

/// Runs the protocol for every question pair at the amplitude level.
ProtocolRun run_protocol(const XorGame& game, const ProverAction& action);

/// Haar-like random unitary: QR of a seeded complex Gaussian matrix with
/// R's diagonal made positive.
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);

struct GameReport {
  std::string game;
  double tau = 0.0;
  double classical_value = 0.0;
  double quantum_value = 0.0;
  double simulated_value = 0.0;
  double gap = 0.0;  // simulated - quantum
  ClassicalStrategy classical_strategy;
  VectorStrategy vector_strategy;
  std::uint64_t seed = 0;
  int restarts = 0;
  int iterations = 0;
};

inline constexpr double kSimulationTol = 1e-6;

class SimulationMismatchError : public Error {
 public:
  SimulationMismatchError(const std::string& what, GameReport report)
      : Error(ErrorKind::SimulationMismatch, what), report_(std::move(report)) {}
  const GameReport& report() const noexcept { return report_; }

 private:
  GameReport report_;
};

/// Protocol objective probed from the simulation itself: for each pair the
/// acceptance is affine in <alpha_s, alpha_t>; `slope` holds the coefficient
/// and `constant` the summed offsets.
struct ProtocolObjective {
  double constant = 0.0;
  RealMatrix slope;
};

ProtocolObjective protocol_objective(const XorGame& game);

/// Computes tau, the classical value, omega_q (Gram solver on the cost
/// matrix) and w_sim (same solver on the probed protocol objective, then
/// re-simulated at the amplitude level). Throws SimulationMismatchError when
/// |w_sim - omega_q| > 1e-6.
GameReport verify_simulation(const XorGame& game, const SolverConfig& config = {});

}  // namespace xorgame
