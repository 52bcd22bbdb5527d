#pragma once

#include <functional>
#include <span>

#include "dkit/types.hpp"

namespace dkit {

/// Value and one subgradient of a convex function of a complex variable,
/// the gradient packed as (d/d Re) + i (d/d Im).
struct ConvexSample {
  double value = 0.0;
  Complex subgradient{};
};

using ConvexFunction = std::function<ConvexSample(Complex)>;

struct DiscSearchOptions {
  Complex center{};
  /// The minimizer must lie in |z - center| <= radius.
  double radius = 0.0;
  /// Stop once best value minus certified lower bound is below this.
  double gap_tol = 1e-12;
  int max_iters = 400;
  /// Warm-start grid per axis (0 disables).
  int grid_points = 0;
};

struct DiscSearchResult {
  Complex argmin{};
  double value = 0.0;
  Complex subgradient{};
  /// Certified upper bound on value - min f.
  double gap = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool certified = false;
};

/// Minimizes a convex function over a disc known to contain a minimizer.
///
/// Central-cut ellipsoid method with deep cuts against the best value seen.
/// Each cut keeps every minimizer inside the ellipsoid, so f(c) - sqrt(g^T P g)
/// is a valid lower bound and the returned gap is a certificate.
/// `extra_candidates` are evaluated up front and only tighten the best value.
DiscSearchResult minimize_in_disc(const ConvexFunction& f, const DiscSearchOptions& options,
                                  std::span<const Complex> extra_candidates = {});

/// Compass search polish from `start`, used when the ellipsoid cannot
/// certify its gap. No certificate.
DiscSearchResult compass_polish(const ConvexFunction& f, Complex start, double initial_step,
                                double min_step, int max_evals);

}  // namespace dkit
