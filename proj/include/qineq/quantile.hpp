#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "qineq/sample.hpp"

namespace qineq {

/// Sample-quantile families. Reference-software type numbers (the `type`
/// argument of R's stats::quantile): E = 1, H = 5, WG = 6, HF = 8.
enum class QuantileScheme { E, H, HF, WG };

inline constexpr std::array<QuantileScheme, 4> kAllSchemes = {
    QuantileScheme::E, QuantileScheme::H, QuantileScheme::WG, QuantileScheme::HF};

std::string_view to_string(QuantileScheme s) noexcept;
QuantileScheme parse_scheme(std::string_view name);
int reference_type(QuantileScheme s) noexcept;

/// (1/n) #{i : X_i <= t}.
double edf(const Sample& sample, double t);

/// Plotting positions p_1 < ... < p_n in (0,1):
///   H  (k - 1/2) / n
///   HF (k - 1/3) / (n + 1/3)
///   WG k / (n + 1)
/// Throws InvalidArgument for scheme E.
std::vector<double> plotting_positions(QuantileScheme scheme, std::size_t n);

/// Quantile function estimate of one sample under one scheme. Immutable and
/// shareable across threads.
class QuantileEstimate {
 public:
  QuantileEstimate(std::shared_ptr<const Sample> sample, QuantileScheme scheme);
  QuantileEstimate(Sample sample, QuantileScheme scheme);

  /// Reference-compatible evaluation at p in (0,1). E returns X_(ceil(np));
  /// the interpolating schemes interpolate linearly between (p_k, X_k:n) and
  /// clamp to X_1:n / X_n:n outside [p_1, p_n]. Throws for p outside (0,1).
  double operator()(double p) const;

  /// Same function evaluated from the stored knots; defined at p = 0 and 1.
  /// Used where the piecewise structure matters (closed-form integration).
  double knot_value(double p) const noexcept;

  const Sample& sample() const noexcept { return *sample_; }
  const std::shared_ptr<const Sample>& sample_ptr() const noexcept { return sample_; }
  QuantileScheme scheme() const noexcept { return scheme_; }
  /// Plotting positions (empty for E, whose steps sit at k/n).
  std::span<const double> knots() const noexcept { return knots_; }

  /// Arguments u in (0,1) where the function has a kink or jump.
  std::vector<double> breakpoints() const;

 private:
  std::shared_ptr<const Sample> sample_;
  QuantileScheme scheme_;
  std::vector<double> knots_;
  double plot_a_ = 0.0;  // plotting position (k - a) / (n + 1 - 2a)
};

}  // namespace qineq
