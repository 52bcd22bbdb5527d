#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dkit/spectrum.hpp"
#include "dkit/types.hpp"

namespace dkit {

/// Absolute/relative slack shared by every inequality check. The relative
/// part is scaled by max(1, total of the dominating side).
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-8;

  double threshold(double scale) const noexcept;
};

struct InequalityVerdict {
  bool holds = false;
  std::vector<double> lower_partial;
  std::vector<double> upper_partial;
  /// upper_partial[k] - lower_partial[k].
  std::vector<double> margins;
  double min_margin = 0.0;
  double threshold = 0.0;
};

/// Checks lower ≺_w upper. Both sides are sorted nonincreasing and the
/// shorter one is zero-padded before prefix sums are compared.
InequalityVerdict weak_majorizes(std::span<const double> upper, std::span<const double> lower,
                                 const Tolerance& tol = {});
InequalityVerdict weak_majorizes(const SpectrumVector& upper, const SpectrumVector& lower,
                                 const Tolerance& tol = {});

/// lower ≺ upper: weak majorization plus equal totals.
InequalityVerdict majorizes(std::span<const double> upper, std::span<const double> lower,
                            const Tolerance& tol = {});
InequalityVerdict majorizes(const SpectrumVector& upper, const SpectrumVector& lower,
                            const Tolerance& tol = {});

/// Block average of consecutive groups of k entries, in the given order.
RealVector mu_k(std::span<const double> x, std::size_t k);

/// (lambda_i - lambda_{n-i+1}) for i <= floor(n/2). Input must be sorted
/// nonincreasing.
SpectrumVector spectral_spread(std::span<const double> lambda);

}  // namespace dkit
