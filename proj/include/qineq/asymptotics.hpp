#pragma once

#include <string_view>

#include "qineq/distributions.hpp"
#include "qineq/indices.hpp"
#include "qineq/quadrature.hpp"

namespace qineq {

/// Weights of the limiting Gaussian processes of the empirical qZ and qD
/// curves, with Q'(u) = 1 / f(Q(u)):
///   a(p) = [1 - qZ(p)] Q'(p/2)/Q(p/2)      b(p) = [1 - qZ(p)] Q'((1+p)/2)/Q((1+p)/2)
///   c(p) = [1 - qD(p)] Q'(p/2)/Q(p/2)      d(p) = [1 - qD(p)] Q'(1-p/2)/Q(1-p/2)
struct WeightValues {
  double a, b, c, d;
};

/// Throws NumericalError when a density underflows or a weight is not finite.
WeightValues weight_functions(const Distribution& dist, double p);

/// Q'(u)/Q(u) = 1 / (Q(u) f(Q(u))).
double log_quantile_derivative(const Distribution& dist, double u);

enum class VarianceKind { Z, D };
std::string_view to_string(VarianceKind k) noexcept;

struct VarianceOptions {
  /// Quadrature spec of both the outer (p) and inner (q) integrals.
  QuadratureSpec quad{.abs_tol = 1e-11, .rel_tol = 0.0, .max_subdivisions = 4000};
  /// Integration square is truncated to [eps, 1 - eps]^2.
  double boundary_eps = 1e-6;
  /// Parallel evaluation of the outer quadrature nodes.
  Execution exec = Execution::parallel;
};

struct VarianceResult {
  VarianceKind kind = VarianceKind::Z;
  double value = 0.0;
  Distribution dist = Distribution::dagum(1, 1, 1);
  VarianceOptions options;
  /// Integrals over {q <= p} and {q >= p}; equal up to quadrature error.
  double lower_triangle = 0.0;
  double upper_triangle = 0.0;
};

/// Integrand of sigma^2_Z at (p, q).
double sigma2_z_integrand(const WeightValues& wp, const WeightValues& wq, double p, double q);
/// Integrand of sigma^2_D at (p, q).
double sigma2_d_integrand(const WeightValues& wp, const WeightValues& wq, double p, double q);

/// Asymptotic variance of sqrt(n) (qZI^E_n - qZI): double integral over the
/// unit square, split along the diagonal. Throws NumericalError if the result
/// is negative beyond the quadrature tolerance.
VarianceResult sigma2_Z(const Distribution& dist, const VarianceOptions& opts = {});
VarianceResult sigma2_D(const Distribution& dist, const VarianceOptions& opts = {});

struct Interval {
  double lower, upper;
};

/// estimate.value +- z_{(1+level)/2} sqrt(sigma2 / n), truncated to [0,1].
Interval normal_ci(const IndexEstimate& estimate, const VarianceResult& sigma2, double level);
/// Same, from the raw numbers.
Interval normal_ci(double value, double sigma2, std::size_t n, double level);

}  // namespace qineq
