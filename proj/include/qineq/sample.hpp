#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qineq {

/// Sorted, validated observations: finite, non-negative, at least one entry.
class Sample {
 public:
  /// Sorts `values`; throws InvalidArgument on empty input, NaN/inf or
  /// negative entries.
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t zero_count() const noexcept { return zero_count_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double min() const noexcept { return values_.front(); }
  double max() const noexcept { return values_.back(); }
  bool has_positive() const noexcept { return values_.back() > 0.0; }

  /// Every observation multiplied by c > 0.
  Sample scaled(double c) const;

 private:
  struct Sorted {};
  Sample(std::vector<double> sorted, Sorted);

  std::vector<double> values_;
  std::size_t zero_count_ = 0;
};

}  // namespace qineq
