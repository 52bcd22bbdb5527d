#include "dkit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "dkit/errors.hpp"

namespace dkit {

SpectrumVector::SpectrumVector(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("SpectrumVector: non-finite entry");
  }
  std::stable_sort(values_.begin(), values_.end(), std::greater<>());
}

SpectrumVector SpectrumVector::nonnegative(std::vector<double> values, double tol) {
  for (double& v : values) {
    if (v < -tol) {
      throw DomainError("SpectrumVector: negative entry " + std::to_string(v));
    }
    v = std::max(v, 0.0);
  }
  return SpectrumVector(std::move(values));
}

double SpectrumVector::sum() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

double SpectrumVector::partial_sum(std::size_t k) const noexcept {
  const std::size_t m = std::min(k, values_.size());
  return std::accumulate(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(m), 0.0);
}

std::vector<double> SpectrumVector::partial_sums() const {
  std::vector<double> out(values_.size());
  std::partial_sum(values_.begin(), values_.end(), out.begin());
  return out;
}

SpectrumVector SpectrumVector::padded(std::size_t n) const {
  if (n <= values_.size()) return *this;
  std::vector<double> v = values_;
  v.resize(n, 0.0);
  return SpectrumVector(std::move(v));
}

SpectrumVector SpectrumVector::head(std::size_t k) const {
  std::vector<double> v(values_.begin(),
                        values_.begin() + static_cast<std::ptrdiff_t>(std::min(k, values_.size())));
  v.resize(k, 0.0);
  return SpectrumVector(std::move(v));
}

SpectrumVector SpectrumVector::scaled(double factor) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= factor;
  return SpectrumVector(std::move(v));
}

namespace {

template <typename Op>
SpectrumVector zip(const SpectrumVector& a, const SpectrumVector& b, Op op) {
  const std::size_t n = std::max(a.size(), b.size());
  const SpectrumVector pa = a.padded(n);
  const SpectrumVector pb = b.padded(n);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = op(pa[i], pb[i]);
  return SpectrumVector(std::move(out));
}

}  // namespace

SpectrumVector operator*(const SpectrumVector& a, const SpectrumVector& b) {
  return zip(a, b, std::multiplies<>());
}

SpectrumVector operator+(const SpectrumVector& a, const SpectrumVector& b) {
  return zip(a, b, std::plus<>());
}

SpectrumVector abs_difference(const SpectrumVector& a, const SpectrumVector& b) {
  return zip(a, b, [](double x, double y) { return std::abs(x - y); });
}

SpectrumVector exp(const SpectrumVector& a) {
  std::vector<double> v = a.vec();
  for (double& x : v) x = std::exp(x);
  return SpectrumVector(std::move(v));
}

}  // namespace dkit
