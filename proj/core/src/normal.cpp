#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dkit/convex2d.hpp"
#include "dkit/discrepancy.hpp"
#include "dkit/errors.hpp"
#include "dkit/rng.hpp"

namespace dkit {

namespace {

double point_scale(std::span<const Complex> pts) {
  double s = 0.0;
  for (Complex p : pts) s = std::max(s, std::abs(p));
  return std::max(s, 1.0);
}

Circle from_two(Complex a, Complex b) { return {(a + b) / 2.0, std::abs(a - b) / 2.0}; }

Circle from_three(Complex a, Complex b, Complex c) {
  const Complex ab = b - a;
  const Complex ac = c - a;
  const double d = 2.0 * (ab.real() * ac.imag() - ab.imag() * ac.real());
  if (std::abs(d) <= 1e-300) {
    // Collinear: the widest pair spans the circle.
    Circle best = from_two(a, b);
    for (const Circle& cand : {from_two(a, c), from_two(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double nb = std::norm(ab);
  const double nc = std::norm(ac);
  const Complex u((ac.imag() * nb - ab.imag() * nc) / d, (ab.real() * nc - ac.real() * nb) / d);
  return {a + u, std::abs(u)};
}

}  // namespace

Circle minimal_enclosing_circle(std::span<const Complex> points) {
  if (points.empty()) throw DomainError("minimal_enclosing_circle: empty point set");
  std::vector<Complex> p(points.begin(), points.end());
  Rng rng(0x5eedc12c1eULL);
  for (std::size_t i = p.size(); i > 1; --i) std::swap(p[i - 1], p[rng.uniform_index(0, i - 1)]);

  const double eps = 1e-12 * point_scale(p);
  auto inside = [eps](const Circle& c, Complex z) { return std::abs(z - c.center) <= c.radius + eps; };

  Circle c{p[0], 0.0};
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (inside(c, p[i])) continue;
    c = {p[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (inside(c, p[j])) continue;
      c = from_two(p[i], p[j]);
      for (std::size_t l = 0; l < j; ++l) {
        if (!inside(c, p[l])) c = from_three(p[i], p[j], p[l]);
      }
    }
  }
  // Report the radius actually needed by the final center.
  double r = 0.0;
  for (Complex z : p) r = std::max(r, std::abs(z - c.center));
  c.radius = r;
  return c;
}

namespace {

double sum_distances(std::span<const Complex> pts, Complex y) {
  double s = 0.0;
  for (Complex p : pts) s += std::abs(p - y);
  return s;
}

}  // namespace

Complex geometric_median(std::span<const Complex> points, double tol) {
  if (points.empty()) throw DomainError("geometric_median: empty point set");
  const double scale = point_scale(points);
  const double coincide = 1e-15 * scale;
  Complex y = std::accumulate(points.begin(), points.end(), Complex{}) / static_cast<double>(points.size());

  for (int it = 0; it < 5000; ++it) {
    Complex num{};
    double den = 0.0;
    Complex r{};
    double eta = 0.0;
    for (Complex p : points) {
      const double d = std::abs(p - y);
      if (d <= coincide) {
        eta += 1.0;
        continue;
      }
      num += p / d;
      den += 1.0 / d;
      r += (p - y) / d;
    }
    if (den == 0.0) break;  // every point coincides with y
    const double rn = std::abs(r);
    if (rn <= eta) break;   // y is a data point satisfying the optimality condition
    const Complex t = num / den;
    const double w = eta > 0.0 ? std::min(1.0, eta / rn) : 0.0;
    const Complex next = (1.0 - w) * t + w * y;
    const double step = std::abs(next - y);
    y = next;
    if (step <= tol * scale) break;
  }

  // Weiszfeld can stall near a data-point minimizer; a data point may be better.
  double best = sum_distances(points, y);
  for (Complex p : points) {
    const double v = sum_distances(points, p);
    if (v < best) {
      best = v;
      y = p;
    }
  }
  return y;
}

namespace {

/// Sum of the k largest |lambda_i - alpha| and a subgradient in alpha.
ConvexSample top_k_distance(std::span<const Complex> eigs, std::size_t k, Complex alpha,
                            std::vector<std::pair<double, std::size_t>>& scratch) {
  scratch.clear();
  for (std::size_t i = 0; i < eigs.size(); ++i) scratch.emplace_back(std::abs(eigs[i] - alpha), i);
  std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k - 1), scratch.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  ConvexSample s;
  for (std::size_t j = 0; j < k; ++j) {
    const auto [d, i] = scratch[j];
    s.value += d;
    if (d > 0.0) s.subgradient += (alpha - eigs[i]) / d;
  }
  return s;
}

}  // namespace

DiscrepancyResult discrepancy_values_normal(std::span<const Complex> eigs, const AlphaSolverConfig& cfg) {
  if (eigs.empty()) throw DomainError("discrepancy_values_normal: empty eigenvalue list");
  for (Complex z : eigs) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DomainError("discrepancy_values_normal: non-finite eigenvalue");
    }
  }
  cfg.validate();
  const std::size_t n = eigs.size();
  const Circle mec = minimal_enclosing_circle(eigs);
  const Complex mean = std::accumulate(eigs.begin(), eigs.end(), Complex{}) / static_cast<double>(n);
  double spread = 0.0;
  for (Complex z : eigs) spread = std::max(spread, std::abs(z - mean));

  std::vector<double> partial;
  DiscrepancyResult out;
  double worst_gap = 0.0;
  std::vector<std::pair<double, std::size_t>> scratch;
  scratch.reserve(n);

  Complex median{};
  if (n > 1) median = geometric_median(eigs);

  for (std::size_t k = 1; k <= n; ++k) {
    SolveDiagnostics diag;
    Complex alpha;
    double value;
    if (k == 1) {
      alpha = mec.center;
      value = mec.radius;
      diag.path = SolverPath::normal_enclosing_circle;
    } else if (spread == 0.0) {
      alpha = mean;
      value = 0.0;
      diag.path = SolverPath::trivial;
    } else {
      auto f = [&](Complex a) { return top_k_distance(eigs, k, a, scratch); };
      DiscSearchOptions opts;
      opts.center = mean;
      opts.radius = 2.0 * spread;
      opts.gap_tol = std::max(1e-14, cfg.refine_tol_rel * f(mean).value);
      opts.max_iters = cfg.max_refine_iters;
      opts.grid_points = cfg.grid_points;
      std::vector<Complex> cands = {mec.center, Complex{}};
      if (k == n) cands.push_back(median);
      DiscSearchResult r = minimize_in_disc(f, opts, cands);
      diag.path = (k == n) ? SolverPath::normal_geometric_median : SolverPath::normal_cutting_plane;
      if (!r.certified) {
        if (!cfg.derivative_free_fallback) {
          throw NumericalFailure("normal discrepancy solver: gap " + std::to_string(r.gap) + " at k=" +
                                     std::to_string(k),
                                 r.argmin, r.value);
        }
        const DiscSearchResult p =
            compass_polish(f, r.argmin, std::max(spread * 1e-3, 1e-8), opts.gap_tol * 1e-2, 20000);
        if (p.value < r.value) {
          r.argmin = p.argmin;
          r.value = p.value;
        }
        diag.path = SolverPath::compass_fallback;
      }
      alpha = r.argmin;
      value = r.value;
      diag.iterations = r.iterations;
      diag.gap = r.gap;
      diag.stationarity_residual = std::abs(r.subgradient);
      worst_gap = std::max(worst_gap, r.gap);
    }
    partial.push_back(value);
    out.alphas.push_back(alpha);
    out.diagnostics.push_back(diag);
  }
  const double noise = 10.0 * std::max({1e-14, cfg.refine_tol_rel * std::max(partial.back(), 1.0), worst_gap});
  out.values = canonicalize_partial_norms(partial, noise);
  out.partial_norms = out.values.partial_sums();
  return out;
}

}  // namespace dkit
