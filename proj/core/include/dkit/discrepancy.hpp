#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dkit/majorize.hpp"
#include "dkit/spectrum.hpp"
#include "dkit/types.hpp"

namespace dkit {

/// Knobs for the per-k shift minimization min_alpha ||A - alpha I||_(k).
struct AlphaSolverConfig {
  /// Warm-start grid per axis over the bounding disc (>= 9).
  int grid_points = 9;
  /// Certified optimality gap, relative to the objective at the disc center.
  double refine_tol_rel = 1e-11;
  int max_refine_iters = 400;
  /// When the cutting-plane stage cannot certify its gap, polish with a
  /// compass search and accept the result instead of throwing.
  bool derivative_free_fallback = true;

  void validate() const;
};

/// Which route produced a per-k value.
enum class SolverPath { hermitian_closed_form, normal_enclosing_circle, normal_geometric_median,
                        normal_cutting_plane, general_cutting_plane, compass_fallback, trivial };

std::string to_string(SolverPath path);

struct SolveDiagnostics {
  int iterations = 0;
  /// |tr(U_k^* V_k)| at the returned shift (0 for closed forms).
  double stationarity_residual = 0.0;
  /// Certified value - optimum (0 for closed forms).
  double gap = 0.0;
  SolverPath path = SolverPath::trivial;
};

struct NormResult {
  double value = 0.0;
  Complex alpha{};
  double residual = 0.0;
  SolveDiagnostics diagnostics;
};

struct DiscrepancyResult {
  SpectrumVector values;             // delta_1 >= ... >= delta_n >= 0
  std::vector<double> partial_norms; // ||A||^delta_(k), k = 1..n
  std::vector<Complex> alphas;       // optimal shift per k
  std::vector<SolveDiagnostics> diagnostics;
};

enum class DispatchPolicy { automatic, force_general };

/// ||A||^delta_(k) = min_alpha ||A - alpha I||_(k), general route.
NormResult discrepancy_norm(const ComplexMatrix& a, std::size_t k, const AlphaSolverConfig& cfg = {});

/// All discrepancy values. Hermitian and normal inputs take their
/// specialised routes unless `policy` forces the general solver.
DiscrepancyResult discrepancy_values(const ComplexMatrix& a, const AlphaSolverConfig& cfg = {},
                                     DispatchPolicy policy = DispatchPolicy::automatic);

/// delta(A) = |lambda↓ - lambda↑|↓ / 2 for Hermitian A.
DiscrepancyResult discrepancy_values_hermitian(const ComplexMatrix& a);

/// Discrepancy values of a normal matrix from its eigenvalues: per k the
/// minimum over alpha of the sum of the k largest |lambda_i - alpha|.
DiscrepancyResult discrepancy_values_normal(std::span<const Complex> eigs,
                                            const AlphaSolverConfig& cfg = {});

struct Circle {
  Complex center{};
  double radius = 0.0;
};

/// Exact smallest enclosing circle (randomized incremental construction with
/// a fixed shuffle seed, so results are reproducible).
Circle minimal_enclosing_circle(std::span<const Complex> points);

/// A minimizer of sum_i |p_i - alpha| (Weiszfeld with the Vardi-Zhang
/// correction at data points).
Complex geometric_median(std::span<const Complex> points, double tol = 1e-14);

/// sum_{i<=k} delta_i(A, B) = min_alpha (||A - alpha I||_(k) + ||B - alpha I||_(k)) / 2.
NormResult joint_discrepancy_norm(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t k,
                                  const AlphaSolverConfig& cfg = {});

/// The vector delta(A, B) built from joint_discrepancy_norm for k = 1..n.
DiscrepancyResult joint_discrepancy_values(const ComplexMatrix& a, const ComplexMatrix& b,
                                           const AlphaSolverConfig& cfg = {});

/// Number of delta_i above tol.abs + tol.rel * delta_1.
std::size_t discrepancy_rank(const ComplexMatrix& a, const Tolerance& tol = {},
                             const AlphaSolverConfig& cfg = {});

struct Frames {
  std::vector<ComplexVector> xs;
  std::vector<ComplexVector> ys;
};

/// Maximizing frames for a Hermitian matrix: x_{2k-1} = (-v_k + v_{n-k+1})/√2,
/// y_{2k-1} = (-v_k - v_{n-k+1})/√2, x_{2k} = y_{2k-1}, y_{2k} = x_{2k-1}.
/// Returns 2*floor(n/2) vectors per side.
Frames hermitian_discrepancy_frames(const ComplexMatrix& a);

struct FrameObjective {
  double value = 0.0;
  bool feasible = false;
};

/// sum_i |<A x_i, y_i>| plus feasibility of the frames for the maximal
/// characterization (both orthonormal, sum_i <x_i, y_i> = 0), tolerance 1e-8.
FrameObjective frame_objective(const ComplexMatrix& a, std::span<const ComplexVector> xs,
                               std::span<const ComplexVector> ys);

/// M - alpha I with M = Q diag(e^{i theta_j}) Q^* a traceless unitary.
ComplexMatrix psi_matrix(std::size_t n, Complex alpha, std::uint64_t seed);

/// Q = V C U^* for A = U S V^* and C the cyclic shift, so that
/// delta(A Q) = sigma(A).
ComplexMatrix kyfan_attaining_unitary(const ComplexMatrix& a);

/// Closed-form discrepancy values of a real 2x2 matrix.
std::array<double, 2> discrepancy_values_2x2_real(const Eigen::Matrix2d& a);

/// Turns per-k partial norms into canonical discrepancy values. Increases
/// larger than `noise` are reported as NumericalFailure; smaller ones are
/// repaired by sorting.
SpectrumVector canonicalize_partial_norms(std::span<const double> partial_norms, double noise);

}  // namespace dkit
