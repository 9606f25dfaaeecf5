#include "xorgame/tsirelson.hpp"

#include <cmath>

#include "xorgame/error.hpp"

namespace xorgame {

namespace {

constexpr double kMomentPsdTol = 1e-6;

ComplexMatrix pauli(char which) {
  ComplexMatrix m(2, 2);
  switch (which) {
    case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 'Y': m(0, 1) = cplx(0.0, -1.0); m(1, 0) = cplx(0.0, 1.0); break;
    case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: m = ComplexMatrix::identity(2);
  }
  return m;
}

ComplexMatrix combine(const std::vector<Observable>& basis, const RealVector& coeffs, bool transposed) {
  const std::size_t d = basis.front().dim;
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    const ComplexMatrix& g = basis[i].matrix;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) out(r, c) += coeffs[i] * (transposed ? g(c, r) : g(r, c));
  }
  return out;
}

}  // namespace

void validate_observable(const Observable& obs) {
  if (obs.matrix.rows() != obs.dim || obs.matrix.cols() != obs.dim)
    throw Error(ErrorKind::NotObservable, "observable shape differs from dim");
  if (hermiticity_defect(obs.matrix) > 1e-10) throw Error(ErrorKind::NotObservable, "observable is not Hermitian");
  const ComplexMatrix sq = matmul(obs.matrix, obs.matrix);
  if (max_abs_diff(sq, ComplexMatrix::identity(obs.dim)) > 1e-9)
    throw Error(ErrorKind::NotObservable, "observable does not square to the identity");
}

void validate_entangled_strategy(const EntangledStrategy& strategy) {
  if (strategy.psi.size() != strategy.dim * strategy.dim)
    throw Error(ErrorKind::DimensionMismatch, "state length is not dim^2");
  if (std::abs(norm(std::span<const cplx>(strategy.psi)) - 1.0) > 1e-10)
    throw Error(ErrorKind::NonUnitState, "shared state is not normalized");
  for (const auto* side : {&strategy.alice, &strategy.bob})
    for (const Observable& o : *side) {
      if (o.dim != strategy.dim) throw Error(ErrorKind::DimensionMismatch, "observable dim differs from state dim");
      validate_observable(o);
    }
}

std::vector<Observable> clifford_generators(int n) {
  if (n < 1 || n > kMaxCliffordGenerators)
    throw Error(ErrorKind::DimensionGuardExceeded, "clifford_generators needs 1 <= n <= 20");
  const int qubits = (n + 1) / 2;
  const std::size_t dim = std::size_t{1} << qubits;
  std::vector<Observable> gens;
  for (int k = 0; k < qubits && static_cast<int>(gens.size()) < n; ++k) {
    for (char middle : {'X', 'Y'}) {
      if (static_cast<int>(gens.size()) == n) break;
      ComplexMatrix m = ComplexMatrix::identity(1);
      for (int q = 0; q < qubits; ++q) m = kron(m, pauli(q < k ? 'Z' : q == k ? middle : 'I'));
      gens.push_back({dim, std::move(m)});
    }
  }
  return gens;
}

ComplexVector apply_alice(const ComplexMatrix& a, std::span<const cplx> psi, std::size_t dim) {
  if (a.rows() != dim || a.cols() != dim || psi.size() != dim * dim)
    throw Error(ErrorKind::DimensionMismatch, "apply_alice");
  ComplexVector out(psi.size());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t b = 0; b < dim; ++b) out[i * dim + b] += aik * psi[k * dim + b];
    }
  return out;
}

ComplexVector apply_bob(const ComplexMatrix& b, std::span<const cplx> psi, std::size_t dim) {
  if (b.rows() != dim || b.cols() != dim || psi.size() != dim * dim)
    throw Error(ErrorKind::DimensionMismatch, "apply_bob");
  ComplexVector out(psi.size());
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t j = 0; j < dim; ++j) {
      cplx acc{};
      for (std::size_t k = 0; k < dim; ++k) acc += b(j, k) * psi[a * dim + k];
      out[a * dim + j] = acc;
    }
  return out;
}

double correlation(const EntangledStrategy& strategy, std::size_t s, std::size_t t) {
  if (s >= strategy.alice.size() || t >= strategy.bob.size())
    throw Error(ErrorKind::IndexOutOfRange, "question index out of range");
  const ComplexVector bob_side = apply_bob(strategy.bob[t].matrix, strategy.psi, strategy.dim);
  const ComplexVector both = apply_alice(strategy.alice[s].matrix, bob_side, strategy.dim);
  return inner(strategy.psi, both).real();
}

EntangledStrategy observables_from_vectors(const VectorStrategy& strategy) {
  validate_vector_strategy(strategy);
  if (strategy.n_dim == 0) throw Error(ErrorKind::DimensionMismatch, "n_dim must be positive");
  const auto gens = clifford_generators(static_cast<int>(strategy.n_dim));
  const std::size_t d = gens.front().dim;

  EntangledStrategy out;
  out.dim = d;
  out.psi.assign(d * d, cplx{});
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) out.psi[j * d + j] = amp;
  for (const RealVector& x : strategy.x) out.alice.push_back({d, combine(gens, x, false)});
  for (const RealVector& y : strategy.y) out.bob.push_back({d, combine(gens, y, true)});
  return out;
}

RealMatrix moment_matrix(const EntangledStrategy& strategy) {
  std::vector<ComplexVector> v;
  for (const Observable& o : strategy.alice) v.push_back(apply_alice(o.matrix, strategy.psi, strategy.dim));
  for (const Observable& o : strategy.bob) v.push_back(apply_bob(o.matrix, strategy.psi, strategy.dim));
  RealMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i; j < v.size(); ++j) m(i, j) = m(j, i) = inner(v[i], v[j]).real();
  return m;
}

VectorStrategy vectors_from_observables(const EntangledStrategy& strategy) {
  validate_entangled_strategy(strategy);
  const RealMatrix m = moment_matrix(strategy);
  const SymmetricEigen eig = jacobi_eigen(m);
  if (!eig.values.empty() && eig.values.front() < -kMomentPsdTol)
    throw Error(ErrorKind::MomentMatrixNotPSD, "moment matrix eigenvalue below -1e-6");
  const std::vector<RealVector> rows = gram_factor(project_psd(m));
  const std::size_t s_count = strategy.alice.size();
  VectorStrategy out;
  out.n_dim = m.rows();
  out.x.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(s_count));
  out.y.assign(rows.begin() + static_cast<std::ptrdiff_t>(s_count), rows.end());
  return out;
}

}  // namespace xorgame
