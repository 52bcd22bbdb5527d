#include "dkit/grid_oracle.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

#include "dkit/errors.hpp"

namespace dkit {

namespace {

Eigen::VectorXd sigmas(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

double top_k(const Eigen::VectorXd& s, std::size_t k) {
  return s.head(static_cast<Eigen::Index>(k)).sum();
}

}  // namespace

std::vector<OracleResult> grid_oracle_discrepancy_norms(const ComplexMatrix& a, int resolution) {
  if (a.rows() != a.cols() || a.rows() == 0) throw DomainError("grid oracle: matrix must be square and nonempty");
  if (resolution < 64) throw DomainError("grid oracle: resolution must be >= 64");
  const Eigen::Index n = a.rows();
  const auto nk = static_cast<std::size_t>(n);
  const Complex mu = a.trace() / static_cast<double>(n);
  ComplexMatrix shifted = a;
  shifted.diagonal().array() -= mu;
  const double radius = 2.0 * sigmas(shifted)(0);

  std::vector<OracleResult> out(nk);
  const Eigen::VectorXd s0 = sigmas(shifted);
  for (std::size_t k = 1; k <= nk; ++k) out[k - 1] = {top_k(s0, k), mu, 0.0, 0.0};
  if (radius == 0.0) return out;

  const double h = 2.0 * radius / (resolution - 1);
  ComplexMatrix work = a;
  auto eval = [&](Complex alpha) {
    work = a;
    work.diagonal().array() -= alpha;
    return sigmas(work);
  };
  // The bounding disc plus one cell of slack so its rim is covered.
  const double reach = radius + h;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const Complex off(-radius + i * h, -radius + j * h);
      if (std::abs(off) > reach) continue;
      const Complex alpha = mu + off;
      const Eigen::VectorXd s = eval(alpha);
      double acc = 0.0;
      for (std::size_t k = 1; k <= nk; ++k) {
        acc += s(static_cast<Eigen::Index>(k - 1));
        if (acc < out[k - 1].value) {
          out[k - 1].value = acc;
          out[k - 1].alpha = alpha;
        }
      }
    }
  }

  for (std::size_t k = 1; k <= nk; ++k) {
    OracleResult& r = out[k - 1];
    double step = h / 2.0;
    static const Complex dirs[8] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    while (step > h * 1e-9) {
      bool moved = false;
      for (Complex d : dirs) {
        const Complex cand = r.alpha + step * d;
        const double v = top_k(eval(cand), k);
        if (v < r.value) {
          r.value = v;
          r.alpha = cand;
          moved = true;
          break;
        }
      }
      if (!moved) step /= 2.0;
    }
    r.spacing = h;
    r.error_bound = static_cast<double>(k) * h;
  }
  return out;
}

OracleResult grid_oracle_discrepancy_norm(const ComplexMatrix& a, std::size_t k, int resolution) {
  if (k < 1 || k > static_cast<std::size_t>(a.rows())) {
    throw DomainError("grid oracle: k=" + std::to_string(k) + " out of range");
  }
  return grid_oracle_discrepancy_norms(a, resolution)[k - 1];
}

}  // namespace dkit
