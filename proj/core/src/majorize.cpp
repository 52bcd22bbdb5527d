#include "dkit/majorize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "dkit/errors.hpp"

namespace dkit {

double Tolerance::threshold(double scale) const noexcept {
  return abs + rel * std::max(1.0, std::abs(scale));
}

InequalityVerdict weak_majorizes(std::span<const double> upper, std::span<const double> lower,
                                 const Tolerance& tol) {
  return weak_majorizes(SpectrumVector(std::vector<double>(upper.begin(), upper.end())),
                        SpectrumVector(std::vector<double>(lower.begin(), lower.end())), tol);
}

InequalityVerdict weak_majorizes(const SpectrumVector& upper, const SpectrumVector& lower,
                                 const Tolerance& tol) {
  const std::size_t n = std::max(upper.size(), lower.size());
  InequalityVerdict v;
  v.upper_partial = upper.padded(n).partial_sums();
  v.lower_partial = lower.padded(n).partial_sums();
  v.margins.resize(n);
  v.min_margin = n == 0 ? 0.0 : INFINITY;
  for (std::size_t k = 0; k < n; ++k) {
    v.margins[k] = v.upper_partial[k] - v.lower_partial[k];
    v.min_margin = std::min(v.min_margin, v.margins[k]);
  }
  v.threshold = tol.threshold(n == 0 ? 0.0 : v.upper_partial.back());
  v.holds = v.min_margin >= -v.threshold;
  return v;
}

InequalityVerdict majorizes(std::span<const double> upper, std::span<const double> lower,
                            const Tolerance& tol) {
  return majorizes(SpectrumVector(std::vector<double>(upper.begin(), upper.end())),
                   SpectrumVector(std::vector<double>(lower.begin(), lower.end())), tol);
}

InequalityVerdict majorizes(const SpectrumVector& upper, const SpectrumVector& lower,
                            const Tolerance& tol) {
  InequalityVerdict v = weak_majorizes(upper, lower, tol);
  if (std::abs(upper.sum() - lower.sum()) > v.threshold) v.holds = false;
  return v;
}

RealVector mu_k(std::span<const double> x, std::size_t k) {
  if (k == 0 || x.size() % k != 0) {
    throw DomainError("mu_k: length " + std::to_string(x.size()) + " not divisible by k=" +
                      std::to_string(k));
  }
  RealVector out(x.size() / k, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i / k] += x[i];
  for (double& v : out) v /= static_cast<double>(k);
  return out;
}

SpectrumVector spectral_spread(std::span<const double> lambda) {
  if (!std::is_sorted(lambda.begin(), lambda.end(), std::greater<>())) {
    throw DomainError("spectral_spread: eigenvalues must be sorted nonincreasing");
  }
  const std::size_t n = lambda.size();
  std::vector<double> out(n / 2);
  for (std::size_t i = 0; i < n / 2; ++i) out[i] = lambda[i] - lambda[n - 1 - i];
  return SpectrumVector(std::move(out));
}

}  // namespace dkit
