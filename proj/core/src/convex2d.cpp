#include "dkit/convex2d.hpp"

#include <algorithm>
#include <cmath>

namespace dkit {

namespace {

struct Best {
  Complex arg{};
  double value = INFINITY;
  Complex grad{};

  void offer(Complex z, const ConvexSample& s) {
    if (s.value < value) {
      value = s.value;
      arg = z;
      grad = s.subgradient;
    }
  }
};

}  // namespace

DiscSearchResult minimize_in_disc(const ConvexFunction& f, const DiscSearchOptions& options,
                                  std::span<const Complex> extra_candidates) {
  DiscSearchResult out;
  Best best;
  int evals = 0;
  auto eval = [&](Complex z) {
    ++evals;
    const ConvexSample s = f(z);
    best.offer(z, s);
    return s;
  };

  for (Complex z : extra_candidates) eval(z);

  const double r0 = options.radius;
  if (options.grid_points >= 2 && r0 > 0.0) {
    const int m = options.grid_points;
    const double h = 2.0 * r0 / (m - 1);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const Complex off(-r0 + i * h, -r0 + j * h);
        if (std::abs(off) <= r0) eval(options.center + off);
      }
    }
  }

  // Ellipsoid {x : (x-c)^T P^{-1} (x-c) <= 1}, P stored as (p11, p12, p22).
  double cx = options.center.real();
  double cy = options.center.imag();
  double p11 = r0 * r0, p12 = 0.0, p22 = r0 * r0;
  double lower = -INFINITY;
  int it = 0;

  if (r0 <= 0.0) {
    const ConvexSample s = eval(options.center);
    lower = s.value;
  }

  for (; it < options.max_iters && r0 > 0.0; ++it) {
    const Complex c(cx, cy);
    const ConvexSample s = eval(c);
    const double gx = s.subgradient.real();
    const double gy = s.subgradient.imag();
    const double pgx = p11 * gx + p12 * gy;
    const double pgy = p12 * gx + p22 * gy;
    const double gpg = gx * pgx + gy * pgy;
    if (!(gpg > 0.0) || !std::isfinite(gpg)) {
      // Zero subgradient (c is optimal) or a collapsed ellipsoid.
      lower = std::max(lower, s.value - (std::isfinite(gpg) && gpg > 0.0 ? std::sqrt(gpg) : 0.0));
      break;
    }
    const double gamma = std::sqrt(gpg);
    lower = std::max(lower, s.value - gamma);
    if (best.value - lower <= options.gap_tol) break;

    // Deep cut: every minimizer y has g.(y - c) <= best - f(c) <= 0.
    const double depth = (s.value - best.value) / gamma;
    if (depth >= 1.0) {
      // The cut leaves no interior point better than `best`.
      lower = std::max(lower, best.value);
      break;
    }
    constexpr double n = 2.0;
    const double step = (1.0 + n * depth) / (n + 1.0);
    const double shrink = n * n * (1.0 - depth * depth) / (n * n - 1.0);
    const double rank1 = 2.0 * (1.0 + n * depth) / ((n + 1.0) * (1.0 + depth));
    const double bx = pgx / gamma;
    const double by = pgy / gamma;
    cx -= step * bx;
    cy -= step * by;
    p11 = shrink * (p11 - rank1 * bx * bx);
    p12 = shrink * (p12 - rank1 * bx * by);
    p22 = shrink * (p22 - rank1 * by * by);
    if (!(p11 > 0.0 && p22 > 0.0 && p11 * p22 - p12 * p12 > 0.0)) {
      lower = std::max(lower, s.value - gamma);
      break;
    }
  }

  out.argmin = best.arg;
  out.value = best.value;
  out.subgradient = best.grad;
  out.gap = std::max(0.0, best.value - lower);
  out.iterations = it;
  out.evaluations = evals;
  out.certified = out.gap <= options.gap_tol;
  return out;
}

DiscSearchResult compass_polish(const ConvexFunction& f, Complex start, double initial_step,
                                double min_step, int max_evals) {
  DiscSearchResult out;
  ConvexSample cur = f(start);
  int evals = 1;
  Complex x = start;
  double step = initial_step;
  static constexpr Complex kDirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  while (step > min_step && evals < max_evals) {
    bool moved = false;
    for (Complex d : kDirs) {
      const Complex y = x + step * d;
      const ConvexSample s = f(y);
      ++evals;
      if (s.value < cur.value) {
        x = y;
        cur = s;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  out.argmin = x;
  out.value = cur.value;
  out.subgradient = cur.subgradient;
  out.gap = INFINITY;
  out.iterations = evals;
  out.evaluations = evals;
  out.certified = false;
  return out;
}

}  // namespace dkit
