#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dkit/discrepancy.hpp"
#include "dkit/majorize.hpp"
#include "dkit/types.hpp"

namespace dkit {

/// general: A, B Ginibre (conjecture). hermitian_vs_general: A Hermitian.
/// normal_line: A normal with collinear eigenvalues. The restricted classes
/// are covered by a theorem.
enum class FuzzClass { general, hermitian_vs_general, normal_line };

std::string to_string(FuzzClass c);
std::optional<FuzzClass> parse_fuzz_class(std::string_view name);

struct FuzzOptions {
  std::size_t n_min = 2;
  std::size_t n_max = 2;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  Tolerance tol;
  FuzzClass matrix_class = FuzzClass::general;
  /// Worker threads; never changes the result.
  unsigned jobs = 1;
  AlphaSolverConfig solver;
};

struct FuzzReport {
  std::size_t trials = 0;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  std::uint64_t master_seed = 0;
  std::string generator;
  FuzzClass matrix_class = FuzzClass::general;
  /// Raw min margin of the trial with the least slack (margin + threshold).
  double worst_margin = 0.0;
  double worst_threshold = 0.0;
  std::size_t worst_trial = 0;
  std::size_t worst_n = 0;
  std::uint64_t worst_seed = 0;
  /// Present when worst_n <= 8; otherwise regenerate from worst_seed.
  std::optional<ComplexMatrix> witness_a;
  std::optional<ComplexMatrix> witness_b;
  std::size_t violations = 0;
  /// Trials whose solver threw; excluded from the margins.
  std::vector<std::size_t> failed_trials;
  /// "no counterexample found" or "counterexample found".
  std::string status;
};

/// The pair drawn for one trial: n uniform on [n_min, n_max], then A and B.
struct FuzzInstance {
  std::size_t n = 0;
  ComplexMatrix a;
  ComplexMatrix b;
};

FuzzInstance fuzz_instance(const FuzzOptions& options, std::size_t trial);

FuzzReport fuzz_conjecture(const FuzzOptions& options);

}  // namespace dkit
