#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "qineq/quadrature.hpp"
#include "qineq/sample.hpp"

namespace qineq {

/// Dagum(sigma, a, b): F(x) = [1 + (x/sigma)^(-a)]^(-b), x > 0.
struct Dagum {
  double sigma = 1.0;
  double a = 1.0;
  double b = 1.0;
  friend bool operator==(const Dagum&, const Dagum&) = default;
};

/// Pareto(x_m, alpha): F(x) = 1 - (x_m/x)^alpha for x >= x_m, 0 below.
struct Pareto {
  double xm = 1.0;
  double alpha = 1.0;
  friend bool operator==(const Pareto&, const Pareto&) = default;
};

class Distribution {
 public:
  using Params = std::variant<Dagum, Pareto>;

  static Distribution dagum(double sigma, double a, double b);
  static Distribution pareto(double xm, double alpha);

  const Params& params() const noexcept { return params_; }
  bool is_dagum() const noexcept { return std::holds_alternative<Dagum>(params_); }

  double cdf(double x) const;
  double quantile(double p) const;
  double density(double x) const;

  /// Lower end of the support (0 for Dagum, x_m for Pareto).
  double support_min() const noexcept;

  bool has_finite_mean() const noexcept;
  /// Mean by quadrature of Q over (0,1) for Dagum, closed form for Pareto.
  /// Throws InfiniteMeanError outside the finite-mean region.
  double mean(const QuadratureSpec& quad = {.abs_tol = 1e-12, .rel_tol = 1e-11,
                                            .max_subdivisions = 4000}) const;

  /// Canonical text form, e.g. "dagum:sigma=1,a=2,b=1"; round-trips through
  /// parse_distribution.
  std::string to_string() const;

  /// Same family with every sample scaled by c > 0.
  Distribution scaled(double c) const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  explicit Distribution(Params p) : params_(p) {}
  Params params_;
};

/// Parses "dagum:sigma=1,a=2,b=1" or "pareto:xm=1,alpha=2". Omitted scale
/// parameters default to 1.
Distribution parse_distribution(std::string_view text);

/// n i.i.d. inverse-transform draws; the i-th uniform is CounterRng(seed).uniform(i).
/// The returned sample is sorted.
Sample draw_sample(const Distribution& dist, std::size_t n, std::uint64_t seed);

}  // namespace qineq
