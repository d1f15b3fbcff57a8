#include "qineq/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "qineq/curves.hpp"
#include "qineq/error.hpp"

namespace qineq {

std::string_view to_string(VarianceKind k) noexcept { return k == VarianceKind::Z ? "Z" : "D"; }

double log_quantile_derivative(const Distribution& dist, double u) {
  const double x = dist.quantile(u);
  if (!(x > dist.support_min()) && dist.is_dagum()) {
    std::ostringstream msg;
    msg << "quantile of " << dist.to_string() << " underflows at u = " << u;
    throw NumericalError(msg.str());
  }
  const double f = dist.density(x);
  const double r = 1.0 / (x * f);
  if (!(f > 0.0) || !std::isfinite(r)) {
    std::ostringstream msg;
    msg << "density of " << dist.to_string() << " underflows at Q(" << u << ") = " << x;
    throw NumericalError(msg.str());
  }
  return r;
}

WeightValues weight_functions(const Distribution& dist, double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("weight functions need p in (0,1)");
  const double lo = 0.5 * p;
  const double mid_hi = 0.5 * (1.0 + p);
  const double hi = 1.0 - 0.5 * p;
  const double q_lo = dist.quantile(lo);
  const double z_factor = q_lo / dist.quantile(mid_hi);  // 1 - qZ(p)
  const double d_factor = q_lo / dist.quantile(hi);      // 1 - qD(p)
  const double g_lo = log_quantile_derivative(dist, lo);
  return {z_factor * g_lo, z_factor * log_quantile_derivative(dist, mid_hi), d_factor * g_lo,
          d_factor * log_quantile_derivative(dist, hi)};
}

double sigma2_z_integrand(const WeightValues& wp, const WeightValues& wq, double p, double q) {
  const double mn = std::min(p, q);
  return wp.a * wq.a * (0.5 * mn - 0.25 * p * q) +
         wp.b * wq.b * (0.5 + 0.5 * mn - 0.25 * (1.0 + p) * (1.0 + q)) +
         wp.b * wq.a * (0.5 * q) * (0.5 * (p - 1.0)) + wp.a * wq.b * (0.5 * p) * (0.5 * (q - 1.0));
}

double sigma2_d_integrand(const WeightValues& wp, const WeightValues& wq, double p, double q) {
  const double mn = std::min(p, q);
  const double mx = std::max(p, q);
  return wp.c * wq.c * (0.5 * mn - 0.25 * p * q) +
         wp.d * wq.d * (1.0 - 0.5 * mx - (1.0 - 0.5 * p) * (1.0 - 0.5 * q)) -
         0.25 * p * q * (wp.d * wq.c + wp.c * wq.d);
}

namespace {

VarianceResult asymptotic_variance(const Distribution& dist, VarianceKind kind,
                                   const VarianceOptions& opts) {
  opts.quad.validate();
  const double eps = opts.boundary_eps;
  if (!(eps > 0.0 && eps < 0.5)) throw InvalidArgument("boundary_eps must lie in (0, 1/2)");
  const double lo = eps, hi = 1.0 - eps;
  auto kernel = kind == VarianceKind::Z ? sigma2_z_integrand : sigma2_d_integrand;

  auto triangle = [&](bool lower) {
    auto outer = [&](double p) {
      const WeightValues wp = weight_functions(dist, p);
      auto inner = [&](double q) { return kernel(wp, weight_functions(dist, q), p, q); };
      return lower ? integrate(inner, lo, p, opts.quad).value
                   : integrate(inner, p, hi, opts.quad).value;
    };
    return integrate(outer, lo, hi, opts.quad, {}, opts.exec);
  };

  const QuadratureResult lower = triangle(true);
  const QuadratureResult upper = triangle(false);
  VarianceResult out{kind, lower.value + upper.value, dist, opts, lower.value, upper.value};
  const double tol = 2.0 * (lower.abs_error + upper.abs_error) + 4.0 * opts.quad.abs_tol;
  if (out.value < 0.0) {
    if (out.value < -tol) {
      std::ostringstream msg;
      msg << "asymptotic variance sigma2_" << to_string(kind) << " of " << dist.to_string()
          << " is negative (" << out.value << ")";
      throw NumericalError(msg.str());
    }
    out.value = 0.0;
  }
  return out;
}

}  // namespace

VarianceResult sigma2_Z(const Distribution& dist, const VarianceOptions& opts) {
  return asymptotic_variance(dist, VarianceKind::Z, opts);
}

VarianceResult sigma2_D(const Distribution& dist, const VarianceOptions& opts) {
  return asymptotic_variance(dist, VarianceKind::D, opts);
}

Interval normal_ci(double value, double sigma2, std::size_t n, double level) {
  if (n == 0) throw InvalidArgument("confidence interval needs a sample size n > 0");
  if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("confidence level must lie in (0,1)");
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2))
    throw InvalidArgument("variance must be finite and non-negative");
  const boost::math::normal_distribution<double> standard;
  const double z = boost::math::quantile(standard, 0.5 * (1.0 + level));
  const double half = z * std::sqrt(sigma2 / static_cast<double>(n));
  return {std::clamp(value - half, 0.0, 1.0), std::clamp(value + half, 0.0, 1.0)};
}

Interval normal_ci(const IndexEstimate& estimate, const VarianceResult& sigma2, double level) {
  return normal_ci(estimate.value, sigma2.value, estimate.n, level);
}

}  // namespace qineq
