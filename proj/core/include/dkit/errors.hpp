#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "dkit/types.hpp"

namespace dkit {

/// Precondition violated by the caller (bad shape, out-of-range k, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative kernel did not reach its tolerance. Carries the best
/// iterate seen so that callers can still report something useful.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what,
                            std::optional<Complex> best_alpha = std::nullopt,
                            std::optional<double> best_value = std::nullopt)
      : std::runtime_error(what), best_alpha_(best_alpha), best_value_(best_value) {}

  const std::optional<Complex>& best_alpha() const noexcept { return best_alpha_; }
  const std::optional<double>& best_value() const noexcept { return best_value_; }

 private:
  std::optional<Complex> best_alpha_;
  std::optional<double> best_value_;
};

}  // namespace dkit
