#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace qineq {

struct QuadratureSpec {
  double abs_tol = 1e-9;
  /// Relative tolerance; 0 means absolute-only.
  double rel_tol = 0.0;
  std::size_t max_subdivisions = 2000;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t subdivisions = 0;
  std::size_t evaluations = 0;
};

enum class Execution { serial, parallel };

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (10/21 point) integration over [lo, hi].
/// Only interior nodes are evaluated, so integrands may be undefined at the
/// endpoints. `breakpoints` seeds the initial partition (points outside
/// (lo, hi) are ignored); use it for known kinks or jumps.
///
/// With Execution::parallel the 21 rule nodes of each interval are evaluated
/// concurrently; the reduction order is fixed so the result is identical to
/// the serial path.
///
/// Throws NumericalError when the tolerance is not met within
/// spec.max_subdivisions intervals.
QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const QuadratureSpec& spec = {},
                           std::span<const double> breakpoints = {},
                           Execution exec = Execution::serial);

/// Single Gauss-Kronrod 21-point panel: returns {kronrod, |kronrod - gauss|}.
std::pair<double, double> gauss_kronrod21(const Integrand& f, double lo, double hi);

}  // namespace qineq
