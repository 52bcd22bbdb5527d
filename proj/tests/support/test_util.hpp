#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "dkit/matcore.hpp"
#include "dkit/spectrum.hpp"
#include "dkit/types.hpp"

namespace dkit::testing {

inline ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = static_cast<Eigen::Index>(rows.begin()->size());
  ComplexMatrix a(n, m);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (Complex z : r) a(i, j++) = z;
    ++i;
  }
  return a;
}

inline ComplexMatrix diag(std::initializer_list<Complex> d) {
  ComplexMatrix a = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (Complex z : d) {
    a(i, i) = z;
    ++i;
  }
  return a;
}

inline double max_abs_diff(const SpectrumVector& x, const SpectrumVector& y) {
  const std::size_t n = std::max(x.size(), y.size());
  const SpectrumVector a = x.padded(n), b = y.padded(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double d = x.size() == y.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

/// Independent reference for Hermitian discrepancy values: |lambda↓ - lambda↑|↓ / 2
/// straight from Eigen's self-adjoint solver.
inline SpectrumVector hermitian_delta_reference(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd l = es.eigenvalues();  // ascending
  const auto n = l.size();
  std::vector<double> d;
  for (Eigen::Index i = 0; i < n; ++i) d.push_back(std::abs(l(n - 1 - i) - l(i)) / 2.0);
  return SpectrumVector(std::move(d));
}

inline SpectrumVector sigma(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const Eigen::VectorXd s = svd.singularValues();
  return SpectrumVector(std::vector<double>(s.data(), s.data() + s.size()));
}

}  // namespace dkit::testing
