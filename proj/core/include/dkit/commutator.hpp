#pragma once

#include <cstddef>
#include <vector>

#include "dkit/spectrum.hpp"
#include "dkit/types.hpp"

namespace dkit {

/// A X - X B.
ComplexMatrix generalized_commutator(const ComplexMatrix& a, const ComplexMatrix& x, const ComplexMatrix& b);

/// [A, B] = A B - B A.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

struct NoncommutingWitness {
  ComplexMatrix u;
  /// sigma([A, U B U^*]).
  SpectrumVector achieved;
  /// |lambda_i - lambda_{n-i+1}| |d_i - d_{n-i+1}| / 2, each entry twice.
  SpectrumVector bound;
};

/// U = Q R_n(pi/4) V^* for A = Q Lambda Q^*, B = V D V^* Hermitian.
NoncommutingWitness maximal_noncommuting_unitary(const ComplexMatrix& a, const ComplexMatrix& b);

struct PartialIsometryTerm {
  double weight = 0.0;
  std::size_t rank = 0;
  ComplexMatrix x;
};

/// X = sum_i (sigma_i - sigma_{i+1}) X_i with X_i = sum_{j<=i} u_j v_j^*.
/// Terms with zero weight are dropped.
std::vector<PartialIsometryTerm> summation_by_parts(const ComplexMatrix& x);

struct XiDecomposition {
  Complex omega{};
  ComplexMatrix y;
  /// Weights beta_{2j} = d_j - d_{j+1} on rank-2j terms, so that the tail
  /// sums of the weights give the discrepancy values.
  std::vector<PartialIsometryTerm> terms;
};

/// A = omega Y + sum_i beta_i X_i for Hermitian A, with delta(Y) = 0 and
/// delta(X_i) = 1_i. Y is the identity; for odd n the middle eigenvalue is
/// carried by the inner entries of the terms.
XiDecomposition hermitian_xi_decomposition(const ComplexMatrix& a);

struct OrbitDiameter {
  double value = 0.0;
  ComplexMatrix witness;
};

/// d_k(A) = max ||U A U^* - V A V^*||_(k) = 2 ||A||^delta_(k) for Hermitian A,
/// attained by U = Q J_n Q^* against V = I.
OrbitDiameter unitary_orbit_diameter_hermitian(const ComplexMatrix& a, std::size_t k);

struct SimilarityWitness {
  ComplexMatrix u1;
  ComplexMatrix u2;
  /// sigma(A U1 B U2^* A^{-1}).
  SpectrumVector achieved;
  /// sigma(B) * lambda↓(A) / lambda↑(A).
  SpectrumVector bound;
};

/// (U1, U2) = (V R_n(pi/4) Q^*, V R_n(pi/4) P^*) for positive definite
/// A = V Lambda V^* and B = Q D P^*.
SimilarityWitness similarity_witness(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace dkit
