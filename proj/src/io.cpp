#include "xorgame/io.hpp"

#include <fstream>
#include <sstream>

#include "xorgame/error.hpp"

namespace xorgame::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::ParseError, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorKind::ParseError, std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t count(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw Error(ErrorKind::ParseError, std::string(key) + " must be a non-negative integer");
  return static_cast<std::size_t>(v.get<long long>());
}

RealMatrix matrix_field(const Json& j, const char* key, std::size_t rows, std::size_t cols) {
  const Json& m = field(j, key);
  if (!m.is_array()) throw Error(ErrorKind::ParseError, std::string(key) + " must be an array of rows");
  if (m.size() != rows) throw Error(ErrorKind::DimensionMismatch, std::string(key) + " row count differs from s_count");
  RealMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& r = m[i];
    if (!r.is_array()) throw Error(ErrorKind::ParseError, std::string(key) + " rows must be arrays");
    if (r.size() != cols) throw Error(ErrorKind::DimensionMismatch, std::string(key) + " column count differs from t_count");
    for (std::size_t k = 0; k < cols; ++k) out(i, k) = number(r[k], key);
  }
  return out;
}

Json matrix_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (double v : m.row(i)) r.push_back(v);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::uint8_t> bits(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw Error(ErrorKind::ParseError, std::string(key) + " must be an array of bits");
  std::vector<std::uint8_t> out;
  for (const Json& b : a) {
    if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1))
      throw Error(ErrorKind::ParseError, std::string(key) + " entries must be 0 or 1");
    out.push_back(static_cast<std::uint8_t>(b.get<int>()));
  }
  return out;
}

std::vector<RealVector> vectors(const Json& j, const char* key, std::size_t dim) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw Error(ErrorKind::ParseError, std::string(key) + " must be an array of vectors");
  std::vector<RealVector> out;
  for (const Json& v : a) {
    if (!v.is_array()) throw Error(ErrorKind::ParseError, std::string(key) + " entries must be arrays");
    if (v.size() != dim) throw Error(ErrorKind::DimensionMismatch, std::string(key) + " vector length differs from n_dim");
    RealVector r;
    for (const Json& x : v) r.push_back(number(x, key));
    out.push_back(std::move(r));
  }
  return out;
}

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::ParseError, "complex numbers are [re, im] pairs");
  return {number(j[0], "re"), number(j[1], "im")};
}

Json observable_json(const Observable& o) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < o.dim; ++i) {
    Json r = Json::array();
    for (const cplx& z : o.matrix.row(i)) r.push_back(complex_json(z));
    rows.push_back(std::move(r));
  }
  return rows;
}

Observable observable_from(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) throw Error(ErrorKind::DimensionMismatch, "observable row count differs from dim");
  Observable o{dim, ComplexMatrix(dim, dim)};
  for (std::size_t i = 0; i < dim; ++i) {
    if (!j[i].is_array() || j[i].size() != dim)
      throw Error(ErrorKind::DimensionMismatch, "observable column count differs from dim");
    for (std::size_t k = 0; k < dim; ++k) o.matrix(i, k) = complex_from(j[i][k]);
  }
  return o;
}

}  // namespace

Json to_json(const XorGame& game) {
  Json j;
  j["name"] = game.name;
  j["s_count"] = game.s_count;
  j["t_count"] = game.t_count;
  j["pi"] = matrix_json(game.pi);
  j["v0"] = matrix_json(game.v0);
  j["v1"] = matrix_json(game.v1);
  return j;
}

XorGame game_from_json(const Json& j) {
  XorGame g;
  const Json& name = field(j, "name");
  if (!name.is_string()) throw Error(ErrorKind::ParseError, "name must be a string");
  g.name = name.get<std::string>();
  g.s_count = count(j, "s_count");
  g.t_count = count(j, "t_count");
  g.pi = matrix_field(j, "pi", g.s_count, g.t_count);
  g.v0 = matrix_field(j, "v0", g.s_count, g.t_count);
  g.v1 = matrix_field(j, "v1", g.s_count, g.t_count);
  return g;
}

Json to_json(const ClassicalStrategy& strategy) {
  Json j;
  j["alice"] = strategy.alice;
  j["bob"] = strategy.bob;
  return j;
}

ClassicalStrategy classical_strategy_from_json(const Json& j) { return {bits(j, "alice"), bits(j, "bob")}; }

Json to_json(const VectorStrategy& strategy) {
  Json j;
  j["n_dim"] = strategy.n_dim;
  j["x_vectors"] = strategy.x;
  j["y_vectors"] = strategy.y;
  return j;
}

VectorStrategy vector_strategy_from_json(const Json& j) {
  VectorStrategy vs;
  vs.n_dim = count(j, "n_dim");
  vs.x = vectors(j, "x_vectors", vs.n_dim);
  vs.y = vectors(j, "y_vectors", vs.n_dim);
  return vs;
}

Json to_json(const EntangledStrategy& strategy) {
  Json j;
  j["dim"] = strategy.dim;
  Json psi = Json::array();
  for (const cplx& z : strategy.psi) psi.push_back(complex_json(z));
  j["psi"] = std::move(psi);
  Json alice = Json::array();
  for (const auto& o : strategy.alice) alice.push_back(observable_json(o));
  Json bob = Json::array();
  for (const auto& o : strategy.bob) bob.push_back(observable_json(o));
  j["alice_observables"] = std::move(alice);
  j["bob_observables"] = std::move(bob);
  return j;
}

EntangledStrategy entangled_strategy_from_json(const Json& j) {
  EntangledStrategy es;
  es.dim = count(j, "dim");
  const Json& psi = field(j, "psi");
  if (!psi.is_array() || psi.size() != es.dim * es.dim) throw Error(ErrorKind::DimensionMismatch, "psi length is not dim^2");
  for (const Json& z : psi) es.psi.push_back(complex_from(z));
  for (const char* key : {"alice_observables", "bob_observables"}) {
    const Json& list = field(j, key);
    if (!list.is_array()) throw Error(ErrorKind::ParseError, std::string(key) + " must be an array");
    auto& side = key[0] == 'a' ? es.alice : es.bob;
    for (const Json& o : list) side.push_back(observable_from(o, es.dim));
  }
  return es;
}

Json to_json(const GameReport& report) {
  Json j;
  j["game"] = report.game;
  j["tau"] = report.tau;
  j["classical_value"] = report.classical_value;
  j["quantum_value"] = report.quantum_value;
  j["simulated_value"] = report.simulated_value;
  j["gap"] = report.gap;
  j["classical_strategy"] = to_json(report.classical_strategy);
  j["vector_strategy"] = to_json(report.vector_strategy);
  j["solver"] = Json{{"seed", report.seed}, {"restarts", report.restarts}, {"iterations", report.iterations}};
  return j;
}

Json to_json(const ProtocolRun& run) {
  Json pairs = Json::array();
  for (const PairOutcome& p : run.pairs) {
    pairs.push_back(Json{{"s", p.s},
                         {"t", p.t},
                         {"p0", p.outcome.p0},
                         {"p1", p.outcome.p1},
                         {"p_reject", p.outcome.reject}});
  }
  Json j;
  j["pairs"] = std::move(pairs);
  j["acceptance"] = run.acceptance;
  return j;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
  out << text;
}

XorGame load_game(const std::filesystem::path& path) { return game_from_json(parse(read_file(path))); }

}  // namespace xorgame::io
