#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dkit/types.hpp"

namespace dkit::cli {

/// Malformed or unreadable matrix input. line/column are 1-based, 0 when the
/// problem has no single position (e.g. a shape mismatch found after parsing).
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& source, std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// JSON object {"rows", "cols", "data"} with [re, im] pairs or bare reals,
/// or CSV of reals. The format is picked from the first non-blank character.
ComplexMatrix parse_matrix(std::string_view text, const std::string& source = "<input>");
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

}  // namespace dkit::cli
