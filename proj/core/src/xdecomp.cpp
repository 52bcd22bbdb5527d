#include "dkit/xdecomp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dkit/discrepancy.hpp"
#include "dkit/errors.hpp"
#include "dkit/matcore.hpp"

namespace dkit {

ComplexMatrix cx_matrix(const CXParams& p) {
  const std::size_t m = p.n / 2;
  if (p.n == 0) throw DomainError("cx_matrix: n must be positive");
  if (p.a.size() != m || p.b.size() != m) throw DomainError("cx_matrix: expected n/2 diagonal and anti-diagonal parameters");
  if ((p.n % 2 == 1) != p.center.has_value()) throw DomainError("cx_matrix: central entry required exactly when n is odd");
  const auto N = static_cast<Eigen::Index>(p.n);
  ComplexMatrix x = ComplexMatrix::Zero(N, N);
  for (std::size_t i = 0; i < m; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    const Eigen::Index s = N - 1 - r;
    x(r, r) = p.a[i];
    x(s, s) = std::conj(p.a[i]);
    x(r, s) = std::conj(p.b[i]);
    x(s, r) = p.b[i];
  }
  if (p.center) x(N / 2, N / 2) = *p.center;
  return x;
}

CXParams cx_params(const ComplexMatrix& x) {
  if (!is_square(x) || x.rows() == 0) throw DomainError("cx_params: matrix must be square and nonempty");
  CXParams p;
  p.n = static_cast<std::size_t>(x.rows());
  const Eigen::Index N = x.rows();
  for (Eigen::Index i = 0; i < N / 2; ++i) {
    p.a.push_back(x(i, i));
    p.b.push_back(x(N - 1 - i, i));
  }
  if (N % 2 == 1) p.center = x(N / 2, N / 2);
  return p;
}

double x_pattern_defect(const ComplexMatrix& x) {
  double worst = 0.0;
  const Eigen::Index n = x.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (j == i || j == n - 1 - i) continue;
      worst = std::max(worst, std::abs(x(i, j)));
    }
  }
  return worst;
}

XDecomposition x_decomposition(const ComplexMatrix& a) {
  const HermEigResult e = herm_eig(a);
  const auto n = static_cast<std::size_t>(a.rows());
  const auto N = static_cast<Eigen::Index>(n);
  const ComplexMatrix r = n >= 2 ? rotation_matrix(n, std::numbers::pi / 4.0) : ComplexMatrix::Identity(1, 1);
  const ComplexMatrix j = special_matrix(SpecialKind::exchange, n);
  const ComplexMatrix rt = r.transpose();
  Eigen::VectorXd lam(N);
  for (Eigen::Index i = 0; i < N; ++i) lam(i) = e.values[static_cast<std::size_t>(i)];

  XDecomposition out;
  out.u = e.vectors * r;
  out.v = e.vectors * j * rt;
  out.x = rt * lam.cast<Complex>().asDiagonal() * j * rt;
  out.params = cx_params(out.x);
  for (std::size_t i = 0; i < n / 2; ++i) {
    out.frame_order.push_back(i);
    out.frame_order.push_back(n - 1 - i);
  }
  if (n % 2 == 1) out.frame_order.push_back(n / 2);
  return out;
}

XDecompositionCheck check_x_decomposition(const ComplexMatrix& a, const XDecomposition& d) {
  const HermEigResult e = herm_eig(a);
  const std::size_t n = e.values.size();
  const auto N = static_cast<Eigen::Index>(n);
  const ComplexMatrix id = ComplexMatrix::Identity(N, N);
  const ComplexMatrix j = special_matrix(SpecialKind::exchange, n);

  XDecompositionCheck c;
  c.unitarity_u = (d.u.adjoint() * d.u - id).norm();
  c.unitarity_v = (d.v.adjoint() * d.v - id).norm();
  c.exchange_residual = (d.u.adjoint() * d.v - j).norm();
  c.pattern_defect = x_pattern_defect(d.x);
  c.centrosymmetry = (j * d.x.conjugate() * j - d.x).norm();
  c.reconstruction = (a - d.u * d.x * d.v.adjoint()).norm();

  for (Eigen::Index i = 0; i < N; ++i) {
    const Eigen::Index p = N - 1 - i;
    const auto lo = static_cast<std::size_t>(std::min(i, p));
    const auto hi = static_cast<std::size_t>(std::max(i, p));
    const double spread = (e.values[lo] - e.values[hi]) / 2.0;
    const double mid = std::abs(e.values[lo] + e.values[hi]) / 2.0;
    if (i == p) {
      c.diagonal_modulus = std::max(c.diagonal_modulus, std::abs(std::abs(d.x(i, i)) - mid));
      continue;
    }
    c.diagonal_modulus = std::max(c.diagonal_modulus, std::abs(std::abs(d.x(i, i)) - spread));
    c.anti_diagonal_modulus = std::max(c.anti_diagonal_modulus, std::abs(std::abs(d.x(i, p)) - mid));
  }

  const DiscrepancyResult ref = discrepancy_values_hermitian(a);
  for (std::size_t k = 1; 2 * k <= n; ++k) {
    std::vector<ComplexVector> xs, ys;
    for (std::size_t t = 0; t < 2 * k; ++t) {
      const auto col = static_cast<Eigen::Index>(d.frame_order[t]);
      xs.push_back(d.u.col(col));
      ys.push_back(d.v.col(col));
    }
    const FrameObjective f = frame_objective(a, xs, ys);
    c.frames_feasible = c.frames_feasible && f.feasible;
    c.frame_objective = std::max(c.frame_objective, std::abs(f.value - ref.partial_norms[2 * k - 1]));
  }

  const double scale = std::max(1.0, a.norm());
  c.ok = c.unitarity_u <= 1e-10 * std::sqrt(static_cast<double>(n)) &&
         c.unitarity_v <= 1e-10 * std::sqrt(static_cast<double>(n)) && c.exchange_residual <= 1e-10 &&
         c.pattern_defect <= 1e-10 * scale && c.centrosymmetry <= 1e-10 * scale &&
         c.reconstruction <= 1e-9 * (1.0 + a.norm()) && c.diagonal_modulus <= 1e-8 * scale &&
         c.anti_diagonal_modulus <= 1e-8 * scale && c.frames_feasible && c.frame_objective <= 1e-7 * scale;
  return c;
}

}  // namespace dkit
