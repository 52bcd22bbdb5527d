#include "dkit/commutator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dkit/errors.hpp"
#include "dkit/matcore.hpp"

namespace dkit {

namespace {

void require_same_square(const ComplexMatrix& a, const ComplexMatrix& b, const char* who) {
  if (!is_square(a) || !is_square(b) || a.rows() != b.rows()) {
    throw DomainError(std::string(who) + ": operands must be square of equal size");
  }
}

}  // namespace

ComplexMatrix generalized_commutator(const ComplexMatrix& a, const ComplexMatrix& x, const ComplexMatrix& b) {
  if (!is_square(a) || !is_square(b) || a.cols() != x.rows() || x.cols() != b.rows()) {
    throw DomainError("generalized_commutator: shapes do not conform");
  }
  return a * x - x * b;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_square(a, b, "commutator");
  return a * b - b * a;
}

NoncommutingWitness maximal_noncommuting_unitary(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_square(a, b, "maximal_noncommuting_unitary");
  const HermEigResult ea = herm_eig(a);
  const HermEigResult eb = herm_eig(b);
  const auto n = static_cast<std::size_t>(a.rows());
  NoncommutingWitness out;
  if (n == 1) {
    out.u = ComplexMatrix::Identity(1, 1);
  } else {
    out.u = ea.vectors * rotation_matrix(n, std::numbers::pi / 4.0) * eb.vectors.adjoint();
  }
  out.achieved = singular_values(commutator(a, out.u * b * out.u.adjoint()));
  std::vector<double> bound(n, 0.0);
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double v = std::abs(ea.values[i] - ea.values[n - 1 - i]) * std::abs(eb.values[i] - eb.values[n - 1 - i]) / 2.0;
    bound[2 * i] = v;
    bound[2 * i + 1] = v;
  }
  out.bound = SpectrumVector(std::move(bound));
  return out;
}

std::vector<PartialIsometryTerm> summation_by_parts(const ComplexMatrix& x) {
  if (!is_square(x)) throw DomainError("summation_by_parts: matrix must be square");
  const SVDResult d = svd(x);
  const std::size_t n = d.singulars.size();
  std::vector<PartialIsometryTerm> terms;
  if (n == 0) return terms;
  const double floor = 1e-14 * d.singulars[0];
  for (std::size_t i = 1; i <= n; ++i) {
    const double next = (i < n) ? d.singulars[i] : 0.0;
    const double w = d.singulars[i - 1] - next;
    if (w <= floor) continue;
    const auto r = static_cast<Eigen::Index>(i);
    terms.push_back({w, i, d.left.leftCols(r) * d.right.leftCols(r).adjoint()});
  }
  return terms;
}

XiDecomposition hermitian_xi_decomposition(const ComplexMatrix& a) {
  const HermEigResult e = herm_eig(a);
  const std::size_t n = e.values.size();
  const std::size_t m = n / 2;
  const auto N = static_cast<Eigen::Index>(n);
  const std::vector<double>& lam = e.values;

  // Pair midpoints c_j and half gaps d_j, with c_{m+1} the middle eigenvalue
  // for odd n and d_{m+1} = 0.
  std::vector<double> c(m + 1, 0.0), d(m + 1, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    c[j] = (lam[j] + lam[n - 1 - j]) / 2.0;
    d[j] = (lam[j] - lam[n - 1 - j]) / 2.0;
  }
  c[m] = (n % 2 == 1) ? lam[m] : (m > 0 ? c[m - 1] : lam[0]);

  XiDecomposition out;
  out.omega = Complex(m > 0 ? c[0] : lam[0], 0.0);
  out.y = ComplexMatrix::Identity(N, N);
  double scale = 0.0;
  for (double v : lam) scale = std::max(scale, std::abs(v));
  const double floor = 1e-14 * std::max(scale, 1.0);

  for (std::size_t j = 0; j < m; ++j) {
    const double beta = d[j] - d[j + 1];
    if (beta <= floor) continue;
    const double tau = (c[j + 1] - c[j]) / beta;
    if (std::abs(tau) > 1.0 + 1e-12) {
      throw NumericalFailure("hermitian_xi_decomposition: inner ratio " + std::to_string(tau) + " exceeds 1");
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(N, std::clamp(tau, -1.0, 1.0));
    for (std::size_t p = 0; p <= j; ++p) {
      diag(static_cast<Eigen::Index>(p)) = 1.0;
      diag(static_cast<Eigen::Index>(n - 1 - p)) = -1.0;
    }
    const ComplexMatrix x = e.vectors * diag.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    out.terms.push_back({beta, 2 * (j + 1), x});
  }
  return out;
}

OrbitDiameter unitary_orbit_diameter_hermitian(const ComplexMatrix& a, std::size_t k) {
  const HermEigResult e = herm_eig(a);
  const auto n = static_cast<std::size_t>(a.rows());
  if (k < 1 || k > n) throw DomainError("unitary_orbit_diameter_hermitian: k out of range");
  OrbitDiameter out;
  out.witness = e.vectors * special_matrix(SpecialKind::exchange, n) * e.vectors.adjoint();
  out.value = ky_fan_norm(a - out.witness * a * out.witness.adjoint(), k);
  return out;
}

SimilarityWitness similarity_witness(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_square(a, b, "similarity_witness");
  const HermEigResult ea = herm_eig(a);
  const std::size_t n = ea.values.size();
  if (ea.values.back() <= 0.0) throw DomainError("similarity_witness: A must be positive definite");
  const SVDResult db = svd(b);
  const ComplexMatrix r = n >= 2 ? rotation_matrix(n, std::numbers::pi / 4.0) : ComplexMatrix::Identity(1, 1);
  SimilarityWitness out;
  out.u1 = ea.vectors * r * db.left.adjoint();
  out.u2 = ea.vectors * r * db.right.adjoint();
  const ComplexMatrix ainv = ea.vectors * Eigen::VectorXd::NullaryExpr(static_cast<Eigen::Index>(n), [&](Eigen::Index i) {
                               return 1.0 / ea.values[static_cast<std::size_t>(i)];
                             }).cast<Complex>().asDiagonal() * ea.vectors.adjoint();
  out.achieved = singular_values(a * out.u1 * b * out.u2.adjoint() * ainv);
  std::vector<double> ratio(n);
  for (std::size_t i = 0; i < n; ++i) ratio[i] = ea.values[i] / ea.values[n - 1 - i];
  out.bound = db.singulars * SpectrumVector(std::move(ratio));
  return out;
}

}  // namespace dkit
