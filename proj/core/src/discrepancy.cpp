#include "dkit/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "dkit/convex2d.hpp"
#include "dkit/errors.hpp"
#include "dkit/matcore.hpp"
#include "dkit/rng.hpp"

namespace dkit {

void AlphaSolverConfig::validate() const {
  if (grid_points < 9) throw DomainError("AlphaSolverConfig: grid_points must be >= 9");
  if (!(refine_tol_rel > 0.0)) throw DomainError("AlphaSolverConfig: refine_tol_rel must be positive");
  if (max_refine_iters < 1) throw DomainError("AlphaSolverConfig: max_refine_iters must be positive");
}

std::string to_string(SolverPath path) {
  switch (path) {
    case SolverPath::hermitian_closed_form: return "hermitian-closed-form";
    case SolverPath::normal_enclosing_circle: return "normal-enclosing-circle";
    case SolverPath::normal_geometric_median: return "normal-geometric-median";
    case SolverPath::normal_cutting_plane: return "normal-cutting-plane";
    case SolverPath::general_cutting_plane: return "general-cutting-plane";
    case SolverPath::compass_fallback: return "compass-fallback";
    case SolverPath::trivial: return "trivial";
  }
  return "unknown";
}

namespace {

constexpr double kAbsFloor = 1e-14;

void require_square(const ComplexMatrix& a, const char* who) {
  if (!is_square(a) || a.rows() == 0) throw DomainError(std::string(who) + ": matrix must be square and nonempty");
  if (!is_finite(a)) throw DomainError(std::string(who) + ": matrix has non-finite entries");
}

void require_k(std::size_t k, Eigen::Index n, const char* who) {
  if (k < 1 || k > static_cast<std::size_t>(n)) {
    throw DomainError(std::string(who) + ": k=" + std::to_string(k) + " outside [1, " +
                      std::to_string(n) + "]");
  }
}

/// Sum of the k largest singular values of A - alpha I together with
/// tr(U_k^* V_k), read off the Hermitian dilation [[0, B], [B^*, 0]]: its top
/// eigenpairs are (sigma_i, (u_i; v_i)/√2).
struct ShiftedKyFan {
  const ComplexMatrix& a;
  std::size_t k;
  mutable ComplexMatrix dilation;

  ShiftedKyFan(const ComplexMatrix& m, std::size_t kk) : a(m), k(kk) {
    const Eigen::Index n = a.rows();
    dilation = ComplexMatrix::Zero(2 * n, 2 * n);
    dilation.topRightCorner(n, n) = a;
    dilation.bottomLeftCorner(n, n) = a.adjoint();
  }

  /// Returns (value, trace) with trace = tr(U_k^* V_k).
  std::pair<double, Complex> operator()(Complex alpha) const {
    const Eigen::Index n = a.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
      dilation(i, n + i) = a(i, i) - alpha;
      dilation(n + i, i) = std::conj(a(i, i) - alpha);
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(dilation);
    const auto kk = static_cast<Eigen::Index>(k);
    double value = 0.0;
    Complex trace{};
    for (Eigen::Index j = 2 * n - kk; j < 2 * n; ++j) {
      value += es.eigenvalues()(j);
      const auto w = es.eigenvectors().col(j);
      trace += 2.0 * w.head(n).dot(w.tail(n));  // dot() conjugates the first operand
    }
    return {value, trace};
  }
};

ConvexSample kyfan_sample(const ShiftedKyFan& f, Complex alpha, double weight) {
  const auto [value, trace] = f(alpha);
  return {weight * value, weight * Complex(-trace.real(), trace.imag())};
}

double sigma1(const ComplexMatrix& m) {
  const SpectrumVector s = singular_values(m);
  return s.empty() ? 0.0 : s[0];
}

/// Newton steps on the smooth branch; a step is kept only if it lowers the
/// gradient without raising the value.
Complex newton_polish(const std::function<ConvexSample(Complex)>& f, Complex alpha, double radius, int& evals) {
  ConvexSample cur = f(alpha);
  const double h = 1e-7 * std::max(radius, 1e-3);
  for (int step = 0; step < 6 && std::abs(cur.subgradient) > 0.0; ++step) {
    const ConvexSample fx = f(alpha + h);
    const ConvexSample fy = f(alpha + Complex(0.0, h));
    evals += 3;
    const Complex gx = (fx.subgradient - cur.subgradient) / h;
    const Complex gy = (fy.subgradient - cur.subgradient) / h;
    const double hxx = gx.real(), hyy = gy.imag(), hxy = 0.5 * (gx.imag() + gy.real());
    const double det = hxx * hyy - hxy * hxy;
    if (!(hxx > 0.0 && det > 0.0)) break;
    const double g1 = cur.subgradient.real(), g2 = cur.subgradient.imag();
    const Complex next = alpha - Complex((hyy * g1 - hxy * g2) / det, (hxx * g2 - hxy * g1) / det);
    const ConvexSample trial = f(next);
    if (!(trial.value <= cur.value * (1.0 + 1e-15) + 1e-300 &&
          std::abs(trial.subgradient) < std::abs(cur.subgradient))) {
      break;
    }
    alpha = next;
    cur = trial;
  }
  return alpha;
}

/// Shared driver for the single and joint minimal representations:
/// minimizes sum_j w_j ||M_j - alpha I||_(k).
NormResult minimize_weighted(std::span<const ComplexMatrix* const> mats, std::span<const double> weights,
                             std::size_t k, const AlphaSolverConfig& cfg,
                             std::span<const Complex> extra = {}) {
  cfg.validate();
  const Eigen::Index n = mats[0]->rows();
  double wsum = 0.0;
  Complex center{};
  for (std::size_t j = 0; j < mats.size(); ++j) {
    wsum += weights[j];
    center += weights[j] * mats[j]->trace() / static_cast<double>(n);
  }
  center /= wsum;
  // f(alpha) >= W k |alpha - c| - k sum_j w_j sigma_1(M_j - cI) and f(c) is at
  // most the subtracted term, so every minimizer sits within twice its ratio.
  double spread = 0.0;
  for (std::size_t j = 0; j < mats.size(); ++j) {
    spread += weights[j] * sigma1(*mats[j] - center * ComplexMatrix::Identity(n, n));
  }
  const double radius = 2.0 * spread / wsum;

  std::vector<ShiftedKyFan> parts;
  parts.reserve(mats.size());
  for (const ComplexMatrix* m : mats) parts.emplace_back(*m, k);
  auto f = [&](Complex alpha) {
    ConvexSample total;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      const ConvexSample s = kyfan_sample(parts[j], alpha, weights[j]);
      total.value += s.value;
      total.subgradient += s.subgradient;
    }
    return total;
  };

  auto residual_at = [&](Complex alpha) {
    Complex tr{};
    for (std::size_t j = 0; j < parts.size(); ++j) tr += weights[j] * parts[j](alpha).second;
    return std::abs(tr / wsum);
  };

  NormResult out;
  if (radius <= kAbsFloor) {
    out.value = f(center).value;
    out.alpha = center;
    out.residual = residual_at(center);
    out.diagnostics = {0, out.residual, 0.0, SolverPath::trivial};
    return out;
  }

  const double scale = f(center).value;
  DiscSearchOptions opts;
  opts.center = center;
  opts.radius = radius;
  opts.gap_tol = std::max(kAbsFloor, cfg.refine_tol_rel * scale);
  opts.max_iters = cfg.max_refine_iters;
  opts.grid_points = cfg.grid_points;

  std::vector<Complex> candidates(extra.begin(), extra.end());
  candidates.push_back(Complex{});  // alpha = 0 keeps the value below the Ky-Fan norm
  DiscSearchResult r = minimize_in_disc(f, opts, candidates);
  SolverPath path = SolverPath::general_cutting_plane;
  if (!r.certified) {
    if (!cfg.derivative_free_fallback) {
      throw NumericalFailure("discrepancy solver: optimality gap " + std::to_string(r.gap) +
                                 " above tolerance " + std::to_string(opts.gap_tol),
                             r.argmin, r.value);
    }
    const DiscSearchResult p = compass_polish(f, r.argmin, std::max(radius * 1e-3, 1e-8),
                                              opts.gap_tol * 1e-2, 20000);
    if (p.value < r.value) {
      r.argmin = p.argmin;
      r.value = p.value;
    }
    r.iterations += p.iterations;
    path = SolverPath::compass_fallback;
  }
  int evals = 0;
  const Complex polished = newton_polish(f, r.argmin, radius, evals);
  if (polished != r.argmin) {
    r.argmin = polished;
    r.value = f(polished).value;
  }
  r.iterations += evals;
  out.value = r.value;
  out.alpha = r.argmin;
  out.residual = residual_at(r.argmin);
  out.diagnostics = {r.iterations, out.residual, r.gap, path};
  return out;
}

}  // namespace

NormResult discrepancy_norm(const ComplexMatrix& a, std::size_t k, const AlphaSolverConfig& cfg) {
  require_square(a, "discrepancy_norm");
  require_k(k, a.rows(), "discrepancy_norm");
  const ComplexMatrix* mats[1] = {&a};
  const double weights[1] = {1.0};
  return minimize_weighted(mats, weights, k, cfg);
}

SpectrumVector canonicalize_partial_norms(std::span<const double> partial_norms, double noise) {
  std::vector<double> deltas(partial_norms.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < partial_norms.size(); ++i) {
    deltas[i] = partial_norms[i] - prev;
    prev = partial_norms[i];
  }
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] < -noise) {
      throw NumericalFailure("discrepancy values: partial norms decrease at k=" + std::to_string(i + 1));
    }
    if (i > 0 && deltas[i] - deltas[i - 1] > noise) {
      throw NumericalFailure("discrepancy values: delta increases at k=" + std::to_string(i + 1) +
                             " by " + std::to_string(deltas[i] - deltas[i - 1]));
    }
  }
  for (double& d : deltas) d = std::max(d, 0.0);
  return SpectrumVector(std::move(deltas));
}

namespace {

DiscrepancyResult assemble(std::vector<NormResult> per_k, double noise) {
  DiscrepancyResult out;
  std::vector<double> partial;
  partial.reserve(per_k.size());
  double worst_gap = 0.0;
  for (const NormResult& r : per_k) {
    partial.push_back(r.value);
    out.alphas.push_back(r.alpha);
    out.diagnostics.push_back(r.diagnostics);
    worst_gap = std::max(worst_gap, r.diagnostics.gap);
  }
  out.values = canonicalize_partial_norms(partial, std::max(noise, 10.0 * worst_gap));
  out.partial_norms = out.values.partial_sums();
  return out;
}

double noise_level(double scale, const AlphaSolverConfig& cfg) {
  return 10.0 * std::max(kAbsFloor, cfg.refine_tol_rel * std::max(scale, 1.0));
}

}  // namespace

DiscrepancyResult discrepancy_values_hermitian(const ComplexMatrix& a) {
  require_square(a, "discrepancy_values_hermitian");
  const HermEigResult eig = herm_eig(a);  // throws on non-Hermitian input
  const std::size_t n = eig.values.size();
  std::vector<double> deltas(n, 0.0);
  for (std::size_t j = 0; j < n / 2; ++j) {
    const double d = (eig.values[j] - eig.values[n - 1 - j]) / 2.0;
    deltas[2 * j] = d;
    deltas[2 * j + 1] = d;
  }
  DiscrepancyResult out;
  out.values = SpectrumVector::nonnegative(std::move(deltas), 0.0);
  out.partial_norms = out.values.partial_sums();
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t j = (k + 1) / 2 - 1;  // ceil(k/2) - 1
    out.alphas.emplace_back((eig.values[j] + eig.values[n - 1 - j]) / 2.0, 0.0);
    out.diagnostics.push_back({0, 0.0, 0.0, SolverPath::hermitian_closed_form});
  }
  return out;
}

DiscrepancyResult discrepancy_values(const ComplexMatrix& a, const AlphaSolverConfig& cfg,
                                     DispatchPolicy policy) {
  require_square(a, "discrepancy_values");
  cfg.validate();
  if (policy == DispatchPolicy::automatic) {
    if (is_hermitian(a)) return discrepancy_values_hermitian(a);
    if (is_normal(a)) {
      const ComplexVector ev = eigenvalues(a);
      std::vector<Complex> eigs(ev.data(), ev.data() + ev.size());
      return discrepancy_values_normal(eigs, cfg);
    }
  }
  const auto n = static_cast<std::size_t>(a.rows());
  std::vector<NormResult> per_k;
  per_k.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) per_k.push_back(discrepancy_norm(a, k, cfg));
  const double scale = per_k.back().value;
  return assemble(std::move(per_k), noise_level(scale, cfg));
}

NormResult joint_discrepancy_norm(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t k,
                                  const AlphaSolverConfig& cfg) {
  require_square(a, "joint_discrepancy_norm");
  require_square(b, "joint_discrepancy_norm");
  if (a.rows() != b.rows()) throw DomainError("joint_discrepancy_norm: size mismatch");
  require_k(k, a.rows(), "joint_discrepancy_norm");
  const ComplexMatrix* mats[2] = {&a, &b};
  const double weights[2] = {0.5, 0.5};
  return minimize_weighted(mats, weights, k, cfg);
}

DiscrepancyResult joint_discrepancy_values(const ComplexMatrix& a, const ComplexMatrix& b,
                                           const AlphaSolverConfig& cfg) {
  require_square(a, "joint_discrepancy_values");
  if (a.rows() != b.rows() || !is_square(b)) throw DomainError("joint_discrepancy_values: size mismatch");
  const auto n = static_cast<std::size_t>(a.rows());
  std::vector<NormResult> per_k;
  for (std::size_t k = 1; k <= n; ++k) per_k.push_back(joint_discrepancy_norm(a, b, k, cfg));
  const double scale = per_k.back().value;
  return assemble(std::move(per_k), noise_level(scale, cfg));
}

std::size_t discrepancy_rank(const ComplexMatrix& a, const Tolerance& tol, const AlphaSolverConfig& cfg) {
  const DiscrepancyResult r = discrepancy_values(a, cfg);
  if (r.values.empty()) return 0;
  const double cut = tol.abs + tol.rel * r.values[0];
  return static_cast<std::size_t>(
      std::count_if(r.values.begin(), r.values.end(), [cut](double d) { return d > cut; }));
}

Frames hermitian_discrepancy_frames(const ComplexMatrix& a) {
  const HermEigResult eig = herm_eig(a);
  const Eigen::Index n = a.rows();
  Frames f;
  const double s = std::numbers::sqrt2 / 2.0;
  for (Eigen::Index k = 0; k < n / 2; ++k) {
    const ComplexVector vk = eig.vectors.col(k);
    const ComplexVector vl = eig.vectors.col(n - 1 - k);
    const ComplexVector x = s * (-vk + vl);
    const ComplexVector y = s * (-vk - vl);
    f.xs.push_back(x);
    f.ys.push_back(y);
    f.xs.push_back(y);
    f.ys.push_back(x);
  }
  return f;
}

FrameObjective frame_objective(const ComplexMatrix& a, std::span<const ComplexVector> xs,
                               std::span<const ComplexVector> ys) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw DomainError("frame_objective: frames must be nonempty and of equal length");
  }
  const Eigen::Index n = a.rows();
  if (!is_square(a)) throw DomainError("frame_objective: matrix must be square");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].size() != n || ys[i].size() != n) throw DomainError("frame_objective: vector dimension mismatch");
  }
  constexpr double kTol = 1e-8;
  FrameObjective out;
  Complex trace{};
  bool orthonormal = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.value += std::abs(ys[i].dot(a * xs[i]));  // <A x, y> = y^* A x
    trace += ys[i].dot(xs[i]);
    for (std::size_t j = 0; j <= i; ++j) {
      const double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(xs[j].dot(xs[i]) - target) > kTol || std::abs(ys[j].dot(ys[i]) - target) > kTol) {
        orthonormal = false;
      }
    }
  }
  out.feasible = orthonormal && std::abs(trace) <= kTol;
  return out;
}

ComplexMatrix psi_matrix(std::size_t n, Complex alpha, std::uint64_t seed) {
  if (n < 2) throw DomainError("psi_matrix: n must be >= 2");
  Rng rng(seed);
  const ComplexMatrix q = random_unitary(n, rng);
  std::vector<Complex> phases;
  std::size_t remaining = n;
  if (n % 2 == 1) {
    // Three phases 120 degrees apart sum to zero.
    const double t = 2.0 * std::numbers::pi * rng.uniform();
    for (int j = 0; j < 3; ++j) phases.push_back(std::polar(1.0, t + 2.0 * std::numbers::pi * j / 3.0));
    remaining -= 3;
  }
  for (std::size_t j = 0; j < remaining / 2; ++j) {
    const double t = 2.0 * std::numbers::pi * rng.uniform();
    phases.push_back(std::polar(1.0, t));
    phases.push_back(-std::polar(1.0, t));
  }
  const auto N = static_cast<Eigen::Index>(n);
  ComplexVector d(N);
  for (Eigen::Index i = 0; i < N; ++i) d(i) = phases[static_cast<std::size_t>(i)];
  return q * d.asDiagonal() * q.adjoint() - alpha * ComplexMatrix::Identity(N, N);
}

ComplexMatrix kyfan_attaining_unitary(const ComplexMatrix& a) {
  require_square(a, "kyfan_attaining_unitary");
  const SVDResult d = svd(a);
  const auto n = static_cast<std::size_t>(a.rows());
  if (n == 1) return d.right * d.left.adjoint();
  return d.right * special_matrix(SpecialKind::cyclic_shift, n) * d.left.adjoint();
}

std::array<double, 2> discrepancy_values_2x2_real(const Eigen::Matrix2d& a) {
  const double d = a(0, 0) - a(1, 1);
  const double base = 0.5 * d * d + a(0, 1) * a(0, 1) + a(1, 0) * a(1, 0);
  const double cross = std::abs(a(0, 1) - a(1, 0)) *
                       std::sqrt((a(0, 1) + a(1, 0)) * (a(0, 1) + a(1, 0)) + d * d);
  return {std::sqrt(std::max(0.0, (base + cross) / 2.0)), std::sqrt(std::max(0.0, (base - cross) / 2.0))};
}

}  // namespace dkit
