#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dkit {

/// Nonincreasing real vector: singular values, discrepancy values and the
/// vectors built from them in majorization statements.
///
/// Construction sorts descending (stable), so every instance is canonical.
class SpectrumVector {
 public:
  SpectrumVector() = default;
  explicit SpectrumVector(std::vector<double> values);
  SpectrumVector(std::initializer_list<double> values)
      : SpectrumVector(std::vector<double>(values)) {}

  /// Like the sorting constructor but rejects entries below -tol and clamps
  /// the remaining small negatives to zero. Used for σ/δ carriers.
  static SpectrumVector nonnegative(std::vector<double> values, double tol);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vec() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  double sum() const noexcept;
  /// Sum of the first k entries (entries past size() count as zero).
  double partial_sum(std::size_t k) const noexcept;
  std::vector<double> partial_sums() const;

  /// Zero-pads (never truncates) to length n.
  SpectrumVector padded(std::size_t n) const;
  /// First k entries, zero-padded if k > size().
  SpectrumVector head(std::size_t k) const;

  SpectrumVector scaled(double factor) const;

  friend bool operator==(const SpectrumVector&, const SpectrumVector&) = default;

 private:
  std::vector<double> values_;
};

/// Entrywise product of sorted vectors, shorter one zero-padded.
SpectrumVector operator*(const SpectrumVector& a, const SpectrumVector& b);
/// Entrywise sum of sorted vectors, shorter one zero-padded.
SpectrumVector operator+(const SpectrumVector& a, const SpectrumVector& b);
/// |a↓ - b↓| re-sorted.
SpectrumVector abs_difference(const SpectrumVector& a, const SpectrumVector& b);
/// Entrywise exp.
SpectrumVector exp(const SpectrumVector& a);

}  // namespace dkit
