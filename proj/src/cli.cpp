#include "xorgame/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "xorgame/entangled.hpp"
#include "xorgame/error.hpp"
#include "xorgame/io.hpp"
#include "xorgame/qip2.hpp"
#include "xorgame/random.hpp"
#include "xorgame/tsirelson.hpp"

namespace xorgame {

namespace {

using io::Json;

constexpr std::size_t kMaxGeneratedQuestions = 12;

struct CliConfig {
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format = "json";
  int threads = 0;
  int restarts = 8;
  int max_iters = 5000;
  double tol = 1e-9;

  std::string game_path;
  std::string gen_kind;
  std::size_t gen_s = 3;
  std::size_t gen_t = 3;
  std::string which = "all";
  std::string prover = "honest";
  std::string strategy_path;
  std::string strategy_kind = "vector";

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("XORGAME_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidParams, "XORGAME_SEED is not an unsigned integer");
      }
    }
    return 0;
  }

  SolverConfig solver() const {
    if (restarts < 1 || max_iters < 1 || !(tol > 0.0))
      throw Error(ErrorKind::InvalidParams, "solver overrides must be positive");
    SolverConfig c;
    c.restarts = restarts;
    c.max_iters = max_iters;
    c.tol = tol;
    c.seed = resolved_seed();
    c.threads = threads;
    return c;
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void emit(const CliConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty())
    out << text;
  else
    io::write_file(cfg.out_path, text);
}

XorGame load_valid_game(const CliConfig& cfg) {
  XorGame g = io::load_game(cfg.game_path);
  validate_game(g);
  return g;
}

int cmd_gen(const CliConfig& cfg, std::ostream& out) {
  XorGame g;
  if (cfg.gen_kind == "chsh") {
    g = chsh_game();
  } else {
    if (cfg.gen_s < 1 || cfg.gen_t < 1 || cfg.gen_s > kMaxGeneratedQuestions || cfg.gen_t > kMaxGeneratedQuestions)
      throw Error(ErrorKind::InvalidParams, "random games need 1 <= s, t <= 12");
    g = random_game(cfg.gen_s, cfg.gen_t, cfg.resolved_seed());
  }
  validate_game(g);
  emit(cfg, io::dump(io::to_json(g)), out);
  return kExitOk;
}

int cmd_value(const CliConfig& cfg, std::ostream& out) {
  const XorGame g = load_valid_game(cfg);
  const bool all = cfg.which == "all";
  Json j;
  std::ostringstream text;
  j["game"] = g.name;
  text << "game " << g.name << "\n";
  if (all || cfg.which == "trivial") {
    const double tau = trivial_value(g);
    j["tau"] = tau;
    text << "tau " << fmt(tau) << "\n";
  }
  if (all || cfg.which == "classical") {
    const ClassicalResult c = classical_value(g);
    j["classical_value"] = c.value;
    j["classical_strategy"] = io::to_json(c.strategy);
    text << "classical_value " << fmt(c.value) << "\n";
  }
  if (all || cfg.which == "quantum") {
    const QuantumValue q = quantum_value(g, cfg.solver());
    j["quantum_value"] = q.value;
    j["vector_strategy"] = io::to_json(q.strategy);
    text << "quantum_value " << fmt(q.value) << "\n";
  }
  emit(cfg, cfg.format == "json" ? io::dump(j) : text.str(), out);
  return kExitOk;
}

std::string report_text(const GameReport& r) {
  std::ostringstream os;
  os << "game " << r.game << "\n"
     << "tau " << fmt(r.tau) << "\n"
     << "classical_value " << fmt(r.classical_value) << "\n"
     << "quantum_value " << fmt(r.quantum_value) << "\n"
     << "simulated_value " << fmt(r.simulated_value) << "\n"
     << "gap " << fmt(r.gap) << "\n";
  return os.str();
}

int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const XorGame g = load_valid_game(cfg);
  GameReport report;
  int code = kExitOk;
  try {
    report = verify_simulation(g, cfg.solver());
  } catch (const SimulationMismatchError& e) {
    err << e.what() << "\n";
    report = e.report();
    code = kExitMismatch;
  }
  emit(cfg, cfg.format == "json" ? io::dump(io::to_json(report)) : report_text(report), out);
  return code;
}

int cmd_simulate(const CliConfig& cfg, std::ostream& out) {
  const XorGame g = load_valid_game(cfg);
  ProverAction action;
  if (cfg.prover == "honest") {
    ClassicalStrategy st = cfg.strategy_path.empty()
                               ? classical_value(g).strategy
                               : io::classical_strategy_from_json(io::parse(io::read_file(cfg.strategy_path)));
    action = HonestProver{std::move(st)};
  } else if (cfg.prover == "optimal") {
    VectorStrategy vs = cfg.strategy_path.empty()
                            ? quantum_value(g, cfg.solver()).strategy
                            : io::vector_strategy_from_json(io::parse(io::read_file(cfg.strategy_path)));
    action = VectorProver{std::move(vs)};
  } else {
    const std::size_t p_dim = g.s_count + g.t_count;
    action = UnitaryProver{random_unitary(p_dim * p_dim, cfg.resolved_seed()), p_dim};
  }
  const ProtocolRun run = run_protocol(g, action);

  if (cfg.format == "json") {
    Json j;
    j["game"] = g.name;
    j["prover"] = cfg.prover;
    const Json body = io::to_json(run);
    j["pairs"] = body["pairs"];
    j["acceptance"] = body["acceptance"];
    emit(cfg, io::dump(j), out);
  } else {
    std::ostringstream os;
    os << "game " << g.name << "\nprover " << cfg.prover << "\n";
    for (const PairOutcome& p : run.pairs)
      os << "s=" << p.s << " t=" << p.t << " p0 " << fmt(p.outcome.p0) << " p1 " << fmt(p.outcome.p1) << " p_reject "
         << fmt(p.outcome.reject) << "\n";
    os << "acceptance " << fmt(run.acceptance) << "\n";
    emit(cfg, os.str(), out);
  }
  return kExitOk;
}

int cmd_strategy(const CliConfig& cfg, std::ostream& out) {
  const XorGame g = load_valid_game(cfg);
  const QuantumValue q = quantum_value(g, cfg.solver());
  const Json j = cfg.strategy_kind == "entangled" ? io::to_json(observables_from_vectors(q.strategy)) : io::to_json(q.strategy);
  emit(cfg, io::dump(j), out);
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return kExitFileOrParse;
    case ErrorKind::DidNotConverge: return kExitSolver;
    case ErrorKind::SimulationMismatch: return kExitMismatch;
    default: return kExitValidation;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"XOR game values, optimal strategies and single-prover protocol simulation", "xorgame"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "64-bit seed (falls back to XORGAME_SEED, then 0)");
  app.add_option("--out", cfg.out_path, "write output here instead of stdout");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", cfg.threads, "OpenMP threads for solver restarts and enumeration");
  app.add_option("--restarts", cfg.restarts, "solver restarts");
  app.add_option("--max-iters", cfg.max_iters, "solver iteration cap");
  app.add_option("--tol", cfg.tol, "solver tolerance on objective change");

  auto* gen = app.add_subcommand("gen", "write a game file");
  gen->add_option("kind", cfg.gen_kind, "chsh | random")->required()->check(CLI::IsMember({"chsh", "random"}));
  gen->add_option("--s", cfg.gen_s, "|S| for random games");
  gen->add_option("--t", cfg.gen_t, "|T| for random games");

  auto* value = app.add_subcommand("value", "compute game values");
  value->add_option("game", cfg.game_path, "game file")->required();
  value->add_option("--which", cfg.which, "trivial | classical | quantum | all")
      ->check(CLI::IsMember({"trivial", "classical", "quantum", "all"}));

  auto* verify = app.add_subcommand("verify", "check that the simulated value equals the quantum value");
  verify->add_option("game", cfg.game_path, "game file")->required();

  auto* simulate = app.add_subcommand("simulate", "run the single-prover protocol");
  simulate->add_option("game", cfg.game_path, "game file")->required();
  simulate->add_option("--prover", cfg.prover, "honest | optimal | random")
      ->check(CLI::IsMember({"honest", "optimal", "random"}));
  simulate->add_option("--strategy", cfg.strategy_path, "classical (honest) or vector (optimal) strategy file");

  auto* strategy = app.add_subcommand("strategy", "write an optimal strategy");
  strategy->add_option("game", cfg.game_path, "game file")->required();
  strategy->add_option("--kind", cfg.strategy_kind, "vector | entangled")->check(CLI::IsMember({"vector", "entangled"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "xorgame: " << e.what() << "\n";
    return kExitUsage;
  }
  if (seed_opt->count() > 0) cfg.seed = seed_value;
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

  try {
    if (gen->parsed()) return cmd_gen(cfg, out);
    if (value->parsed()) return cmd_value(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (simulate->parsed()) return cmd_simulate(cfg, out);
    return cmd_strategy(cfg, out);
  } catch (const Error& e) {
    err << "xorgame: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace xorgame
