#pragma once

#include <cstddef>
#include <vector>

#include "dkit/types.hpp"

namespace dkit {

struct OracleResult {
  double value = 0.0;
  Complex alpha{};
  /// Grid spacing h.
  double spacing = 0.0;
  /// k * h: value exceeds the true minimum by at most this much.
  double error_bound = 0.0;
};

/// Brute-force upper bound on ||A||^delta_(k): evaluates sum of the top-k
/// singular values of A - alpha I on a resolution x resolution grid covering
/// the bounding disc, then refines the best point by pattern search.
/// Independent of the main solver. resolution >= 64.
OracleResult grid_oracle_discrepancy_norm(const ComplexMatrix& a, std::size_t k, int resolution);

/// Same grid for every k = 1..n in one pass.
std::vector<OracleResult> grid_oracle_discrepancy_norms(const ComplexMatrix& a, int resolution);

}  // namespace dkit
