#pragma once

#include <vector>

#include "xorgame/gram_sdp.hpp"
#include "xorgame/linalg.hpp"

namespace xorgame {

/// Hermitian operator with eigenvalues +-1.
struct Observable {
  std::size_t dim = 0;
  ComplexMatrix matrix;
};

/// Throws NotObservable unless Hermitian (1e-10) and M*M = I (1e-9).
void validate_observable(const Observable& obs);

/// Shared state on C^d (x) C^d, Alice's index major: psi[a*d + b].
struct EntangledStrategy {
  std::size_t dim = 0;
  ComplexVector psi;
  std::vector<Observable> alice;
  std::vector<Observable> bob;
};

/// Throws NonUnitState, NotObservable or DimensionMismatch.
void validate_entangled_strategy(const EntangledStrategy& strategy);

inline constexpr int kMaxCliffordGenerators = 20;

/// Pairwise anticommuting Hermitian unitaries of dimension 2^ceil(n/2),
/// Jordan-Wigner style: Z..Z X I..I and Z..Z Y I..I.
std::vector<Observable> clifford_generators(int n);

/// (A (x) I) psi and (I (x) B) psi for psi in C^d (x) C^d.
ComplexVector apply_alice(const ComplexMatrix& a, std::span<const cplx> psi, std::size_t dim);
ComplexVector apply_bob(const ComplexMatrix& b, std::span<const cplx> psi, std::size_t dim);

/// <psi| X_s (x) Y_t |psi>, real part.
double correlation(const EntangledStrategy& strategy, std::size_t s, std::size_t t);

/// Maximally entangled state of local dimension d = 2^ceil(N/2) with
/// X_s = sum_i x_s[i] gamma_i and Y_t = sum_i y_t[i] gamma_i^T, so that
/// <psi| X_s (x) Y_t |psi> = <x_s, y_t>.
EntangledStrategy observables_from_vectors(const VectorStrategy& strategy);

/// Real moment matrix of the vectors (X_s (x) I)psi and (I (x) Y_t)psi,
/// rows Alice first.
RealMatrix moment_matrix(const EntangledStrategy& strategy);

/// Unit vectors (dimension |S|+|T|) whose cross inner products equal the
/// strategy's correlations. Throws MomentMatrixNotPSD below -1e-6.
VectorStrategy vectors_from_observables(const EntangledStrategy& strategy);

}  // namespace xorgame
