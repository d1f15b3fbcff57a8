#include "qineq/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "qineq/error.hpp"
#include "qineq/format.hpp"
#include "qineq/rng.hpp"

namespace qineq {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw InvalidArgument(std::string("distribution parameter ") + name +
                          " must be positive and finite");
}

void require_open_unit(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << "probability must lie in (0,1), got " << p;
    throw InvalidArgument(msg.str());
  }
}

// Dagum quantile written as sigma * (p^(-1/b) - 1)^(-1/a).
double dagum_quantile(const Dagum& d, double p) {
  return d.sigma * std::pow(std::expm1(-std::log(p) / d.b), -1.0 / d.a);
}

// Same quantile at p = 1 - t, accurate for tiny t.
double dagum_quantile_upper(const Dagum& d, double t) {
  return d.sigma * std::pow(std::expm1(-std::log1p(-t) / d.b), -1.0 / d.a);
}

}  // namespace

Distribution Distribution::dagum(double sigma, double a, double b) {
  require_positive(sigma, "sigma");
  require_positive(a, "a");
  require_positive(b, "b");
  return Distribution(Dagum{sigma, a, b});
}

Distribution Distribution::pareto(double xm, double alpha) {
  require_positive(xm, "xm");
  require_positive(alpha, "alpha");
  return Distribution(Pareto{xm, alpha});
}

double Distribution::cdf(double x) const {
  if (!(x > 0.0) || !std::isfinite(x))
    throw InvalidArgument("cdf argument must be positive and finite");
  if (const auto* d = std::get_if<Dagum>(&params_)) {
    const double t = std::pow(x / d->sigma, -d->a);
    return std::exp(-d->b * std::log1p(t));
  }
  const auto& p = std::get<Pareto>(params_);
  if (x < p.xm) return 0.0;
  return -std::expm1(p.alpha * std::log(p.xm / x));
}

double Distribution::quantile(double p) const {
  require_open_unit(p);
  if (const auto* d = std::get_if<Dagum>(&params_)) return dagum_quantile(*d, p);
  const auto& par = std::get<Pareto>(params_);
  return par.xm * std::exp(-std::log1p(-p) / par.alpha);
}

double Distribution::density(double x) const {
  if (!std::isfinite(x) || x < support_min() || !(x > 0.0))
    throw InvalidArgument("density argument outside the support");
  if (const auto* d = std::get_if<Dagum>(&params_)) {
    // f(x) = (a b / x) t (1 + t)^(-b-1), t = (x/sigma)^(-a)
    const double log_t = -d->a * std::log(x / d->sigma);
    const double log1p_t = log_t > 35.0 ? log_t + std::log1p(std::exp(-log_t))
                                        : std::log1p(std::exp(log_t));
    return d->a * d->b / x * std::exp(log_t - (d->b + 1.0) * log1p_t);
  }
  const auto& p = std::get<Pareto>(params_);
  return p.alpha / x * std::exp(p.alpha * std::log(p.xm / x));
}

double Distribution::support_min() const noexcept {
  if (const auto* p = std::get_if<Pareto>(&params_)) return p->xm;
  return 0.0;
}

bool Distribution::has_finite_mean() const noexcept {
  if (const auto* d = std::get_if<Dagum>(&params_)) return d->a > 1.0;
  return std::get<Pareto>(params_).alpha > 1.0;
}

double Distribution::mean(const QuadratureSpec& quad) const {
  if (!has_finite_mean())
    throw InfiniteMeanError("distribution " + to_string() + " has an infinite mean");
  if (const auto* p = std::get_if<Pareto>(&params_)) return p->alpha * p->xm / (p->alpha - 1.0);
  const Dagum d = std::get<Dagum>(params_);
  // Integrate Q over (0,1) after u = 1 - s^k, which turns the (1-u)^(-1/a)
  // singularity at u = 1 into the bounded factor s^(k(1 - 1/a) - 1).
  const double k = 1.0 / (1.0 - 1.0 / d.a) + 1.0;
  auto integrand = [&](double s) {
    const double t = std::exp(k * std::log(s));  // 1 - u
    if (t >= 1.0) return 0.0;
    return dagum_quantile_upper(d, t) * k * t / s;
  };
  return integrate(integrand, 0.0, 1.0, quad).value;
}

std::string Distribution::to_string() const {
  if (const auto* d = std::get_if<Dagum>(&params_))
    return "dagum:sigma=" + shortest(d->sigma) + ",a=" + shortest(d->a) + ",b=" + shortest(d->b);
  const auto& p = std::get<Pareto>(params_);
  return "pareto:xm=" + shortest(p.xm) + ",alpha=" + shortest(p.alpha);
}

Distribution Distribution::scaled(double c) const {
  require_positive(c, "scale factor");
  if (const auto* d = std::get_if<Dagum>(&params_)) return dagum(d->sigma * c, d->a, d->b);
  const auto& p = std::get<Pareto>(params_);
  return pareto(p.xm * c, p.alpha);
}

Distribution parse_distribution(std::string_view text) {
  const std::string_view trimmed = trim(text);
  const auto colon = trimmed.find(':');
  std::string family(trim(trimmed.substr(0, colon)));
  std::transform(family.begin(), family.end(), family.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  std::map<std::string, double> kv;
  if (colon != std::string_view::npos) {
    for (const std::string& item : split(trimmed.substr(colon + 1), ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw InvalidArgument("distribution parameter '" + item + "' is not key=value");
      const std::string key(trim(std::string_view(item).substr(0, eq)));
      if (kv.count(key)) throw InvalidArgument("duplicate distribution parameter '" + key + "'");
      kv[key] = parse_double(std::string_view(item).substr(eq + 1));
    }
  }
  auto take = [&](const char* key, std::optional<double> fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (!fallback)
        throw InvalidArgument("distribution '" + std::string(text) + "' is missing '" + key + "'");
      return *fallback;
    }
    const double v = it->second;
    kv.erase(it);
    return v;
  };

  if (family == "dagum") {
    const double sigma = take("sigma", 1.0);
    const double a = take("a", std::nullopt);
    const double b = take("b", std::nullopt);
    if (!kv.empty()) throw InvalidArgument("unknown Dagum parameter '" + kv.begin()->first + "'");
    return Distribution::dagum(sigma, a, b);
  }
  if (family == "pareto") {
    const double xm = take("xm", 1.0);
    const double alpha = take("alpha", std::nullopt);
    if (!kv.empty()) throw InvalidArgument("unknown Pareto parameter '" + kv.begin()->first + "'");
    return Distribution::pareto(xm, alpha);
  }
  throw InvalidArgument("unknown distribution family '" + family + "' (expected dagum or pareto)");
}

Sample draw_sample(const Distribution& dist, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample size must be at least 1");
  const CounterRng rng(seed);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = dist.quantile(rng.uniform(i));
  return Sample(std::move(values));
}

}  // namespace qineq
