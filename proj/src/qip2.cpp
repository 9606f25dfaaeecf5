#include "xorgame/qip2.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "xorgame/error.hpp"
#include "xorgame/random.hpp"

namespace xorgame {

namespace {

constexpr double kStateNormTol = 1e-10;
constexpr double kUnitaryTol = 1e-9;

void check_pair(const XorGame& game, std::size_t s, std::size_t t) {
  if (s >= game.s_count || t >= game.t_count) throw Error(ErrorKind::IndexOutOfRange, "question pair out of range");
}

void check_pair(const ProtocolDims& dims, std::size_t s, std::size_t t) {
  if (s >= dims.s_count || t >= dims.t_count) throw Error(ErrorKind::IndexOutOfRange, "question pair out of range");
}

void check_state(const ProtocolState& state) {
  if (state.amplitudes.size() != state.dims.total())
    throw Error(ErrorKind::StateShapeMismatch, "amplitude count differs from 2 (|S|+|T|) p_dim");
}

ProtocolState apply_vector_prover(const ProtocolState& state, const VectorProver& prover) {
  const ProtocolDims& dims = state.dims;
  const VectorStrategy& vs = prover.strategy;
  if (vs.x.size() != dims.s_count || vs.y.size() != dims.t_count)
    throw Error(ErrorKind::DimensionMismatch, "vector prover question counts differ from the protocol");
  if (vs.n_dim > dims.p_dim) throw Error(ErrorKind::DimensionMismatch, "vector dimension exceeds p_dim");
  validate_vector_strategy(vs);

  ProtocolState out{dims, ComplexVector(dims.total())};
  for (std::size_t v = 0; v < 2; ++v)
    for (std::size_t slot = 0; slot < dims.m_dim(); ++slot) {
      for (std::size_t p = 1; p < dims.p_dim; ++p)
        if (std::abs(state.amplitudes[dims.index(v, slot, p)]) > 1e-14)
          throw Error(ErrorKind::StateShapeMismatch, "vector prover expects the private register in |0>");
      const cplx amp = state.amplitudes[dims.index(v, slot, 0)];
      if (amp == cplx{}) continue;
      const RealVector& alpha = slot < dims.s_count ? vs.x[slot] : vs.y[slot - dims.s_count];
      for (std::size_t p = 0; p < vs.n_dim; ++p) out.amplitudes[dims.index(v, slot, p)] = amp * alpha[p];
    }
  return out;
}

ProtocolState apply_unitary_prover(const ProtocolState& state, const UnitaryProver& prover) {
  const ProtocolDims& dims = state.dims;
  const std::size_t block = dims.m_dim() * dims.p_dim;
  if (prover.p_dim != dims.p_dim || prover.unitary.rows() != block || prover.unitary.cols() != block)
    throw Error(ErrorKind::DimensionMismatch, "unitary does not act on M (x) P of this protocol");
  const ComplexMatrix check = matmul(adjoint(prover.unitary), prover.unitary);
  if (max_abs_diff(check, ComplexMatrix::identity(block)) > kUnitaryTol)
    throw Error(ErrorKind::NotUnitary, "prover matrix is not unitary");

  ProtocolState out{dims, ComplexVector(dims.total())};
  for (std::size_t v = 0; v < 2; ++v) {
    std::span<const cplx> in(state.amplitudes.data() + v * block, block);
    const ComplexVector moved = matvec(prover.unitary, in);
    std::copy(moved.begin(), moved.end(), out.amplitudes.begin() + static_cast<std::ptrdiff_t>(v * block));
  }
  return out;
}

double expectation(const ComplexMatrix& proj, const ProtocolState& state) {
  const ProtocolDims& dims = state.dims;
  const std::size_t vm = dims.vm_dim();
  ComplexVector w(vm);
  double acc = 0.0;
  for (std::size_t p = 0; p < dims.p_dim; ++p) {
    for (std::size_t i = 0; i < vm; ++i) w[i] = state.amplitudes[i * dims.p_dim + p];
    acc += inner(w, matvec(proj, w)).real();
  }
  return acc;
}

double pair_acceptance(const XorGame& game, std::size_t s, std::size_t t, const OutcomeDistribution& d) {
  return game.v0(s, t) * d.p0 + game.v1(s, t) * d.p1;
}

std::size_t prover_p_dim(const ProverAction& action) {
  if (const auto* v = std::get_if<VectorProver>(&action)) return std::max<std::size_t>(1, v->strategy.n_dim);
  if (const auto* u = std::get_if<UnitaryProver>(&action)) return u->p_dim;
  return 1;
}

}  // namespace

std::size_t ProtocolDims::slot(MessageIndex u) const {
  if (u.flag > 1) throw Error(ErrorKind::IndexOutOfRange, "message flag must be 0 or 1");
  const std::size_t limit = u.flag == 0 ? s_count : t_count;
  if (u.question >= limit) throw Error(ErrorKind::IndexOutOfRange, "message question out of range");
  return u.flag == 0 ? u.question : s_count + u.question;
}

ProtocolState build_initial_state(const XorGame& game, std::size_t s, std::size_t t, std::size_t p_dim) {
  check_pair(game, s, t);
  if (p_dim < 1) throw Error(ErrorKind::DimensionMismatch, "p_dim must be at least 1");
  ProtocolDims dims{game.s_count, game.t_count, p_dim};
  ProtocolState st{dims, ComplexVector(dims.total())};
  const double amp = std::numbers::sqrt2 / 2.0;
  st.amplitudes[dims.index(0, dims.slot({0, s}), 0)] = amp;
  st.amplitudes[dims.index(1, dims.slot({1, t}), 0)] = amp;
  return st;
}

VerifierMeasurement verifier_measurement(const XorGame& game, std::size_t s, std::size_t t) {
  check_pair(game, s, t);
  const ProtocolDims dims{game.s_count, game.t_count, 1};
  const std::size_t n = dims.vm_dim();
  const std::size_t i0 = dims.slot({0, s});                 // |0>|0s>
  const std::size_t i1 = dims.m_dim() + dims.slot({1, t});  // |1>|1t>

  // |Psi+-><Psi+-| has +-1/2 on the (i0,i1) block only.
  VerifierMeasurement m{ComplexMatrix(n, n), ComplexMatrix(n, n), ComplexMatrix::identity(n)};
  m.accept0(i0, i0) = m.accept0(i1, i1) = m.accept0(i0, i1) = m.accept0(i1, i0) = 0.5;
  m.accept1(i0, i0) = m.accept1(i1, i1) = 0.5;
  m.accept1(i0, i1) = m.accept1(i1, i0) = -0.5;
  m.reject -= m.accept0;
  m.reject -= m.accept1;
  return m;
}

ProtocolState apply_honest_prover(const ProtocolState& state, const ClassicalStrategy& strategy, std::size_t s,
                                  std::size_t t) {
  check_state(state);
  const ProtocolDims& dims = state.dims;
  if (strategy.alice.size() != dims.s_count || strategy.bob.size() != dims.t_count)
    throw Error(ErrorKind::StateShapeMismatch, "classical strategy does not match the protocol register");
  check_pair(dims, s, t);
  ProtocolState out = state;
  for (std::size_t v = 0; v < 2; ++v)
    for (std::size_t slot = 0; slot < dims.m_dim(); ++slot) {
      const std::uint8_t bit = slot < dims.s_count ? strategy.alice[slot] : strategy.bob[slot - dims.s_count];
      if ((bit & 1u) == 0) continue;
      for (std::size_t p = 0; p < dims.p_dim; ++p) out.amplitudes[dims.index(v, slot, p)] *= -1.0;
    }
  return out;
}

ProtocolState apply_prover(const ProtocolState& state, const ProverAction& action, std::size_t s, std::size_t t) {
  check_state(state);
  check_pair(state.dims, s, t);
  if (const auto* h = std::get_if<HonestProver>(&action)) return apply_honest_prover(state, h->strategy, s, t);
  if (const auto* v = std::get_if<VectorProver>(&action)) return apply_vector_prover(state, *v);
  return apply_unitary_prover(state, std::get<UnitaryProver>(action));
}

ProtocolState dishonest_state(const ProtocolDims& dims, const ComplexMatrix& phi_s, const ComplexMatrix& phi_t) {
  for (const ComplexMatrix* phi : {&phi_s, &phi_t})
    if (phi->rows() != dims.m_dim() || phi->cols() != dims.p_dim)
      throw Error(ErrorKind::DimensionMismatch, "prover answer must be (|S|+|T|) x p_dim");
  ProtocolState st{dims, ComplexVector(dims.total())};
  const double amp = std::numbers::sqrt2 / 2.0;
  for (std::size_t slot = 0; slot < dims.m_dim(); ++slot)
    for (std::size_t p = 0; p < dims.p_dim; ++p) {
      st.amplitudes[dims.index(0, slot, p)] = amp * phi_s(slot, p);
      st.amplitudes[dims.index(1, slot, p)] = amp * phi_t(slot, p);
    }
  if (std::abs(norm(std::span<const cplx>(st.amplitudes)) - 1.0) > kStateNormTol)
    throw Error(ErrorKind::NonUnitState, "prover answers do not form a normalized state");
  return st;
}

OutcomeDistribution outcome_distribution(const ProtocolState& state, const VerifierMeasurement& meas) {
  check_state(state);
  const std::size_t vm = state.dims.vm_dim();
  for (const ComplexMatrix* p : {&meas.accept0, &meas.accept1, &meas.reject})
    if (p->rows() != vm || p->cols() != vm) throw Error(ErrorKind::DimensionMismatch, "measurement does not act on V (x) M");
  return {expectation(meas.accept0, state), expectation(meas.accept1, state), expectation(meas.reject, state)};
}

OutcomeDistribution predicted_outcomes(std::span<const cplx> alpha_ss, std::span<const cplx> alpha_tt) {
  const double norms = 0.25 * (inner(alpha_ss, alpha_ss).real() + inner(alpha_tt, alpha_tt).real());
  const double cross = 0.5 * inner(alpha_ss, alpha_tt).real();
  const double p0 = norms + cross;
  const double p1 = norms - cross;
  return {p0, p1, 1.0 - p0 - p1};
}

double simulated_value(const XorGame& game, const VectorStrategy& strategy) {
  if (strategy.x.size() != game.s_count || strategy.y.size() != game.t_count)
    throw Error(ErrorKind::DimensionMismatch, "strategy question counts differ from the game");
  double total = 0.0;
  for (std::size_t s = 0; s < game.s_count; ++s)
    for (std::size_t t = 0; t < game.t_count; ++t) {
      const double overlap = dot(strategy.x[s], strategy.y[t]);
      double acc = 0.0;
      for (int c = 0; c < 2; ++c) acc += game.predicate(c, s, t) * (1.0 + (c == 0 ? overlap : -overlap));
      total += 0.5 * game.pi(s, t) * acc;
    }
  return total;
}

ProtocolRun run_protocol(const XorGame& game, const ProverAction& action) {
  const std::size_t p_dim = prover_p_dim(action);
  ProtocolRun run;
  for (std::size_t s = 0; s < game.s_count; ++s)
    for (std::size_t t = 0; t < game.t_count; ++t) {
      const ProtocolState init = build_initial_state(game, s, t, p_dim);
      const ProtocolState answered = apply_prover(init, action, s, t);
      const OutcomeDistribution d = outcome_distribution(answered, verifier_measurement(game, s, t));
      run.pairs.push_back({s, t, d});
      run.acceptance += game.pi(s, t) * pair_acceptance(game, s, t, d);
    }
  return run;
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
  SplitMix64 rng(seed);
  ComplexMatrix g(dim, dim);
  for (cplx& z : g.data()) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    z = cplx(re, im);
  }
  return orthonormalize_columns(g);
}

ProtocolObjective protocol_objective(const XorGame& game) {
  validate_game(game);
  // Two one-dimensional vector provers: every overlap +1, every overlap -1.
  VectorStrategy aligned{1, std::vector<RealVector>(game.s_count, RealVector{1.0}),
                         std::vector<RealVector>(game.t_count, RealVector{1.0})};
  VectorStrategy opposed = aligned;
  for (auto& y : opposed.y) y[0] = -1.0;
  const ProtocolRun plus = run_protocol(game, VectorProver{aligned});
  const ProtocolRun minus = run_protocol(game, VectorProver{opposed});

  ProtocolObjective obj;
  obj.slope = RealMatrix(game.s_count, game.t_count);
  std::vector<double> offsets;
  for (std::size_t k = 0; k < plus.pairs.size(); ++k) {
    const std::size_t s = plus.pairs[k].s;
    const std::size_t t = plus.pairs[k].t;
    const double hi = pair_acceptance(game, s, t, plus.pairs[k].outcome);
    const double lo = pair_acceptance(game, s, t, minus.pairs[k].outcome);
    obj.slope(s, t) = 0.5 * game.pi(s, t) * (hi - lo);
    offsets.push_back(0.5 * game.pi(s, t) * (hi + lo));
  }
  obj.constant = compensated_sum(offsets);
  return obj;
}

GameReport verify_simulation(const XorGame& game, const SolverConfig& config) {
  validate_game(game);
  GameReport report;
  report.game = game.name;
  report.tau = trivial_value(game);
  const ClassicalResult classical = classical_value(game);
  report.classical_value = classical.value;
  report.classical_strategy = classical.strategy;

  const QuantumValue quantum = quantum_value(game, config);
  report.quantum_value = quantum.value;
  report.vector_strategy = quantum.strategy;

  // Independent solver instance on the protocol's own objective, with its
  // own seed stream.
  SolverConfig sim_config = config;
  sim_config.seed = SplitMix64(~config.seed)();
  const ProtocolObjective objective = protocol_objective(game);
  const SolverResult sim = maximize_bilinear(objective.slope, sim_config);
  report.simulated_value = run_protocol(game, VectorProver{sim.strategy}).acceptance;

  report.gap = report.simulated_value - report.quantum_value;
  report.seed = config.seed;
  report.restarts = config.restarts;
  report.iterations = quantum.solver.total_iterations() + sim.total_iterations();

  if (std::abs(report.gap) > kSimulationTol) {
    std::ostringstream os;
    os.precision(17);
    os << "|w_sim - omega_q| = " << std::abs(report.gap) << " exceeds 1e-6";
    throw SimulationMismatchError(os.str(), report);
  }
  return report;
}

}  // namespace xorgame
