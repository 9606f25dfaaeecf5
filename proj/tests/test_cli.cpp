#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "test_support.hpp"
#include "xorgame/cli.hpp"
#include "xorgame/entangled.hpp"
#include "xorgame/io.hpp"

using namespace xorgame;
using namespace xorgame::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "xorgame");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "xorgame_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_game(const XorGame& g, const std::string& file) {
  const fs::path p = scratch_dir() / file;
  io::write_file(p, io::dump(io::to_json(g)));
  return p;
}

}  // namespace

TEST_CASE("gen") {
  const Result chsh = run({"gen", "chsh"});
  CHECK(chsh.code == kExitOk);
  const XorGame g = io::game_from_json(io::parse(chsh.out));
  CHECK_NOTHROW(validate_game(g));
  CHECK(trivial_value(g) == 0.5);

  const Result a = run({"gen", "random", "--s", "3", "--t", "3", "--seed", "7"});
  const Result b = run({"gen", "random", "--s", "3", "--t", "3", "--seed", "7"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(run({"gen", "random", "--s", "3", "--t", "3", "--seed", "8"}).out != a.out);

  CHECK(run({"gen", "random", "--s", "13", "--t", "2"}).code == kExitValidation);
  CHECK(run({"gen", "hexagon"}).code == kExitUsage);
}

TEST_CASE("seed falls back to XORGAME_SEED") {
  ::setenv("XORGAME_SEED", "7", 1);
  const Result env = run({"gen", "random", "--s", "2", "--t", "2"});
  ::unsetenv("XORGAME_SEED");
  const Result flag = run({"gen", "random", "--s", "2", "--t", "2", "--seed", "7"});
  CHECK(env.out == flag.out);
  CHECK(run({"gen", "random", "--s", "2", "--t", "2"}).out == run({"gen", "random", "--s", "2", "--t", "2", "--seed", "0"}).out);
}

TEST_CASE("value") {
  const fs::path chsh = write_game(chsh_game(), "chsh.json");
  const Result all = run({"value", chsh.string(), "--which", "all"});
  REQUIRE(all.code == kExitOk);
  const io::Json j = io::parse(all.out);
  CHECK(j["tau"].get<double>() == 0.5);
  CHECK(j["classical_value"].get<double>() == doctest::Approx(0.75));
  CHECK(std::abs(j["quantum_value"].get<double>() - 0.853553) < 1e-6);

  const Result trivial = run({"value", chsh.string(), "--which", "trivial", "--format", "text"});
  CHECK(trivial.out.find("tau 0.5") != std::string::npos);
  CHECK(trivial.out.find("quantum") == std::string::npos);

  const fs::path broken = scratch_dir() / "broken.json";
  io::write_file(broken, "{\"name\": ");
  const Result bad = run({"value", broken.string()});
  CHECK(bad.code == kExitFileOrParse);
  CHECK(bad.err.find("ParseError") != std::string::npos);

  CHECK(run({"value", (scratch_dir() / "missing.json").string()}).code == kExitFileOrParse);

  XorGame invalid = chsh_game();
  invalid.v0(0, 0) = 1.5;
  CHECK(run({"value", write_game(invalid, "invalid.json").string()}).code == kExitValidation);
}

TEST_CASE("verify") {
  const fs::path chsh = write_game(chsh_game(), "chsh.json");
  const fs::path out = scratch_dir() / "report.json";
  const Result r = run({"verify", chsh.string(), "--out", out.string()});
  CHECK(r.code == kExitOk);
  const io::Json rep = io::parse(io::read_file(out));
  CHECK(std::abs(rep["gap"].get<double>()) <= 1e-6);
  CHECK(rep["solver"]["restarts"] == 8);

  const Result acc = run({"verify", write_game(all_accepting(), "acc.json").string()});
  CHECK(acc.code == kExitOk);
  const io::Json aj = io::parse(acc.out);
  for (const char* key : {"tau", "classical_value", "quantum_value", "simulated_value"})
    CHECK(aj[key].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Result gen = run({"gen", "random", "--s", "3", "--t", "2", "--seed", std::to_string(seed)});
    const fs::path p = scratch_dir() / ("rand" + std::to_string(seed) + ".json");
    io::write_file(p, gen.out);
    CHECK(run({"verify", p.string()}).code == kExitOk);
  }
}

TEST_CASE("simulate") {
  const fs::path chsh = write_game(chsh_game(), "chsh.json");
  const io::Json honest = io::parse(run({"simulate", chsh.string(), "--prover", "honest"}).out);
  CHECK(honest["acceptance"].get<double>() == doctest::Approx(0.75).epsilon(1e-12));
  for (const auto& p : honest["pairs"]) CHECK(p["p_reject"].get<double>() <= 1e-10);

  const io::Json optimal = io::parse(run({"simulate", chsh.string(), "--prover", "optimal"}).out);
  CHECK(std::abs(optimal["acceptance"].get<double>() - kChshQuantum) < 1e-6);

  const io::Json random = io::parse(run({"simulate", chsh.string(), "--prover", "random", "--seed", "3"}).out);
  CHECK(random["acceptance"].get<double>() <= 0.853553 + 1e-4);

  const fs::path st = scratch_dir() / "strategy.json";
  io::write_file(st, R"({"alice":[1,1],"bob":[1,1]})");
  const io::Json given = io::parse(run({"simulate", chsh.string(), "--prover", "honest", "--strategy", st.string()}).out);
  CHECK(given["acceptance"].get<double>() == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("strategy") {
  const fs::path chsh = write_game(chsh_game(), "chsh.json");
  const Result v = run({"strategy", chsh.string()});
  REQUIRE(v.code == kExitOk);
  const VectorStrategy vs = io::vector_strategy_from_json(io::parse(v.out));
  CHECK(std::abs(simulated_value(chsh_game(), vs) - kChshQuantum) < 1e-6);

  const Result e = run({"strategy", chsh.string(), "--kind", "entangled"});
  REQUIRE(e.code == kExitOk);
  const EntangledStrategy es = io::entangled_strategy_from_json(io::parse(e.out));
  CHECK(std::abs(entangled_win_probability(chsh_game(), es) - kChshQuantum) < 1e-6);
}

TEST_CASE("binary exit codes") {
  const fs::path broken = scratch_dir() / "broken.json";
  io::write_file(broken, "[");
  const std::string cmd = std::string(XORGAME_CLI_PATH) + " value " + broken.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == kExitFileOrParse);
}
