#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dkit/types.hpp"

namespace dkit {

/// Parameters of a centrosymmetric X matrix of size n: (i,i) = a_i,
/// (n-1-i, n-1-i) = conj(a_i), (i, n-1-i) = conj(b_i), (n-1-i, i) = b_i for
/// i < n/2, and the central entry c when n is odd.
struct CXParams {
  std::size_t n = 0;
  std::vector<Complex> a;
  std::vector<Complex> b;
  std::optional<Complex> center;
};

ComplexMatrix cx_matrix(const CXParams& p);

/// Reads the pattern entries back out of an X matrix (a_i from (i,i),
/// b_i from (n-1-i, i)).
CXParams cx_params(const ComplexMatrix& x);

struct XDecomposition {
  ComplexMatrix u;
  ComplexMatrix x;
  ComplexMatrix v;
  /// Realized parameters of X; their moduli are the discrepancy values and
  /// midpoints, the phases are whatever the construction produced.
  CXParams params;
  /// Column order 0, n-1, 1, n-2, ... pairing x_i with its partner, so that
  /// the first 2k columns of U and V form feasible frames.
  std::vector<std::size_t> frame_order;
};

/// A = U X V^* with U^* V = J_n for Hermitian A: U = Q R, V = Q J R^T,
/// X = R^T Lambda J R^T with R = R_n(pi/4).
XDecomposition x_decomposition(const ComplexMatrix& a);

/// Largest modulus among entries off the diagonal and anti-diagonal.
double x_pattern_defect(const ComplexMatrix& x);

struct XDecompositionCheck {
  double unitarity_u = 0.0;       // ||U^* U - I||_F
  double unitarity_v = 0.0;
  double exchange_residual = 0.0; // ||U^* V - J_n||_F
  double pattern_defect = 0.0;
  double centrosymmetry = 0.0;    // ||J conj(X) J - X||_F
  double reconstruction = 0.0;    // ||A - U X V^*||_F
  /// Max error of |X_ii| against (lambda_i - lambda_{n-1-i}) / 2 and of the
  /// anti-diagonal moduli against |lambda_i + lambda_{n-1-i}| / 2.
  double diagonal_modulus = 0.0;
  double anti_diagonal_modulus = 0.0;
  /// Max over k of |frame objective of the first 2k frame columns - ||A||^delta_(2k)|.
  double frame_objective = 0.0;
  bool frames_feasible = true;
  bool ok = false;
};

/// Verifies every documented property of an X decomposition of A.
XDecompositionCheck check_x_decomposition(const ComplexMatrix& a, const XDecomposition& d);

}  // namespace dkit
