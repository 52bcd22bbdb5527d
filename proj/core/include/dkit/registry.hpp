#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dkit/discrepancy.hpp"
#include "dkit/majorize.hpp"
#include "dkit/rng.hpp"
#include "dkit/types.hpp"

namespace dkit {

enum class InequalityId {
  R1, R2, R3, R4, R5, R6, R7, R8, R9, R10, R11, R12, R13,
  R14, R15, R16, R17, R18, R19, R20, R21, R22, R23, R24, R25, R26
};

std::string to_string(InequalityId id);
std::optional<InequalityId> parse_inequality_id(std::string_view name);

/// R1..R25, the entries backed by a proof.
std::vector<InequalityId> proven_inequalities();
/// R1..R26.
std::vector<InequalityId> all_inequalities();

/// One-line statement of the claim.
std::string describe(InequalityId id);

/// Named operands. Which names are read depends on the entry:
///   A, B, X   general square matrices
///   P         PSD (R10), projection (R18) or positive definite (R23)
///   Q         unitary (R10)
///   S         n x k isometry (R6, R11)
///   A1..A4    blocks of the 2x2 block matrix (R5)
struct InequalityInputs {
  std::map<std::string, ComplexMatrix> matrices;
  /// Index partition for pinching (R3, R4).
  std::vector<std::vector<std::size_t>> blocks;
  /// Principal submatrix rows/columns (R25).
  std::vector<std::size_t> indices;
  /// Nested commutator operands A_1..A_m, 2 <= m <= 4 (R22).
  std::vector<ComplexMatrix> chain;
  /// Number of direct-sum copies (R14).
  std::size_t copies = 2;

  const ComplexMatrix& get(const std::string& name) const;
};

enum class PartKind {
  /// lhs ≺_w rhs.
  weak,
  /// Prefix sums of lhs and rhs agree (vectors taken in the given order).
  equality,
  /// lhs_i <= rhs_i for every i.
  elementwise
};

std::string to_string(PartKind kind);

struct InequalityPart {
  std::string label;
  PartKind kind = PartKind::weak;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> lhs_partial;
  std::vector<double> rhs_partial;
  /// weak: rhs_partial - lhs_partial; equality: -|rhs_partial - lhs_partial|;
  /// elementwise: rhs - lhs.
  std::vector<double> margins;
  double min_margin = 0.0;
  double threshold = 0.0;
  bool holds = false;
};

struct InequalityReport {
  InequalityId id = InequalityId::R1;
  std::vector<InequalityPart> parts;
  bool holds = false;
  double min_margin = 0.0;
  Tolerance tol;
  /// Digest of every input matrix.
  std::optional<std::uint64_t> witness;
  /// "holds" / "violated"; R26 uses "no counterexample found" /
  /// "counterexample found".
  std::string status;
};

/// Evaluates one registry entry. Throws DomainError when the inputs do not
/// match the entry's arity or structural preconditions.
InequalityReport evaluate_inequality(InequalityId id, const InequalityInputs& inputs, const Tolerance& tol = {},
                                     const AlphaSolverConfig& cfg = {});

/// Whether random instances of size n exist for the entry (R5 and R13 need
/// even n, R6/R11/R18 need n >= 2).
bool is_applicable(InequalityId id, std::size_t n);

/// Draws a random instance satisfying the entry's preconditions.
InequalityInputs sample_inputs(InequalityId id, std::size_t n, Rng& rng);

struct RegistrySweep {
  InequalityId id = InequalityId::R1;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  std::size_t violations = 0;
  /// Raw margin and threshold of the part with the least slack
  /// (margin + threshold) over all trials.
  double worst_margin = 0.0;
  double worst_threshold = 0.0;
  std::size_t worst_trial = 0;
  std::string worst_part;
  /// Trials whose solver threw; excluded from the margins.
  std::vector<std::size_t> failed_trials;
  bool holds = false;
  std::string status;
};

/// Seed of trial t of entry id: derive_seed(derive_seed(master, id), t).
std::uint64_t sweep_trial_seed(InequalityId id, std::uint64_t master, std::size_t trial) noexcept;

/// Evaluates `trials` random instances of size n. `jobs` threads split the
/// trials; the reduction runs in trial order, so results do not depend on it.
RegistrySweep sweep_inequality(InequalityId id, std::size_t n, std::size_t trials, std::uint64_t master_seed,
                               const Tolerance& tol = {}, const AlphaSolverConfig& cfg = {}, unsigned jobs = 1);

/// min over real t of ||X + t I||_(k) (imaginary = false) or
/// ||X + i t I||_(k) (imaginary = true), by golden-section search.
double min_real_shift_kyfan(const ComplexMatrix& x, std::size_t k, bool imaginary);

}  // namespace dkit
