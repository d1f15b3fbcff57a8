#include "qineq/indices.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "qineq/error.hpp"
#include "qineq/format.hpp"
#include "qineq/rng.hpp"

namespace qineq {

std::string_view to_string(IndexKind k) noexcept {
  switch (k) {
    case IndexKind::qZI: return "qZI";
    case IndexKind::qDI: return "qDI";
    case IndexKind::G1: return "G1";
    case IndexKind::G2: return "G2";
    case IndexKind::G3: return "G3";
    case IndexKind::GI: return "GI";
    case IndexKind::BI: return "BI";
    case IndexKind::ZI: return "ZI";
    case IndexKind::DI: return "DI";
  }
  return "?";
}

IndexKind parse_index_kind(std::string_view name) {
  for (IndexKind k : {IndexKind::qZI, IndexKind::qDI, IndexKind::G1, IndexKind::G2, IndexKind::G3,
                      IndexKind::GI, IndexKind::BI, IndexKind::ZI, IndexKind::DI})
    if (to_string(k) == name) return k;
  throw InvalidArgument("unknown index kind '" + std::string(name) + "'");
}

bool is_classical(IndexKind k) noexcept {
  return k == IndexKind::GI || k == IndexKind::BI || k == IndexKind::ZI || k == IndexKind::DI;
}

CurveKind curve_of(IndexKind k) {
  switch (k) {
    case IndexKind::qZI: return CurveKind::qZ;
    case IndexKind::qDI: return CurveKind::qD;
    case IndexKind::G1: return CurveKind::L1;
    case IndexKind::G2: return CurveKind::L2;
    case IndexKind::G3: return CurveKind::L3;
    case IndexKind::GI: return CurveKind::L;
    case IndexKind::BI: return CurveKind::B;
    case IndexKind::ZI: return CurveKind::Z;
    case IndexKind::DI: return CurveKind::D;
  }
  throw InvalidArgument("unknown index kind");
}

std::string_view to_string(IndexMethod m) noexcept {
  switch (m) {
    case IndexMethod::closed_form: return "closed_form";
    case IndexMethod::quadrature: return "quadrature";
    case IndexMethod::monte_carlo: return "monte_carlo";
  }
  return "?";
}

nlohmann::json IndexEstimate::to_json(int significant_digits) const {
  nlohmann::json j;
  j["kind"] = std::string(to_string(kind));
  j["value"] = round_significant(value, significant_digits);
  j["scheme"] = scheme ? std::string(to_string(*scheme)) : std::string("exact");
  j["method"] = std::string(to_string(method));
  j["n"] = n;
  if (method == IndexMethod::monte_carlo) {
    if (std_error)
      j["std_error"] = round_significant(*std_error, significant_digits);
    else
      j["std_error"] = nullptr;
  }
  return j;
}

namespace {

// Integrand of G_i: 2 (p - L_i(p)).
template <class QuantileFn>
double gini_integrand(const QuantileFn& Q, CurveKind lorenz, double p) {
  return 2.0 * (p - q_curve_with(Q, lorenz, p));
}

void require_quantile_index(IndexKind kind) {
  if (is_classical(kind))
    throw InvalidArgument("index " + std::string(to_string(kind)) +
                          " is classical and needs a parametric distribution");
}

// log1p(x)/x and (x - log1p(x))/x^2, with Taylor series near 0.
struct LogRatios {
  double l, m;
};

LogRatios log_ratios(double x) {
  if (std::abs(x) < 0.125) {
    // log1p(x)/x = sum (-x)^k/(k+1);  (x - log1p(x))/x^2 = sum (-x)^k/(k+2)
    double l = 0.0, m = 0.0;
    for (int k = 24; k >= 0; --k) {
      l = 1.0 / (k + 1) - x * l;
      m = 1.0 / (k + 2) - x * m;
    }
    return {l, m};
  }
  const double lg = std::log1p(x);
  return {lg / x, (x - lg) / (x * x)};
}

// Integral over a piece of width w of N(p)/D(p), N and D linear with the
// given endpoint values (D > 0 at both ends).
//   t in [0,w]: N = Na + (Nb-Na) t/w, D = Da (1 + x t/w), x = (Db-Da)/Da
//   integral = (w/Da) [Na log1p(x)/x + (Nb-Na) (x - log1p(x))/x^2]
double mobius_piece(double w, double na, double nb, double da, double db) {
  const double x = (db - da) / da;
  const LogRatios r = log_ratios(x);
  return w / da * (na * r.l + (nb - na) * r.m);
}

// Argument of the denominator quantile at curve abscissa p.
double denominator_argument(IndexKind kind, double p) {
  return kind == IndexKind::qZI ? 0.5 * (1.0 + p) : 1.0 - 0.5 * p;
}

[[noreturn]] void degenerate_piece(const QuantileEstimate& est, IndexKind kind, double lo,
                                   double hi) {
  std::ostringstream msg;
  msg << "denominator quantile of " << to_string(kind) << " (scheme " << to_string(est.scheme())
      << ") vanishes on [" << lo << ", " << hi << "]; the sample has too many zeros";
  throw DegenerateSampleError(msg.str());
}

std::vector<double> curve_breakpoints(const QuantileEstimate& est, bool qz, bool qd) {
  std::vector<double> cuts;
  for (double u : est.breakpoints()) {
    if (2.0 * u < 1.0) cuts.push_back(2.0 * u);
    if (u > 0.5) {
      if (qz) cuts.push_back(2.0 * u - 1.0);
      if (qd) cuts.push_back(2.0 * (1.0 - u));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace

IndexEstimate index_exact(const Distribution& dist, IndexKind kind, const QuadratureSpec& quad) {
  if (is_classical(kind)) return classical_index(dist, kind, quad);
  const auto Q = [&](double u) { return dist.quantile(u); };
  const CurveKind curve = curve_of(kind);
  Integrand f;
  if (kind == IndexKind::qZI || kind == IndexKind::qDI)
    f = [&](double p) { return q_curve_with(Q, curve, p); };
  else
    f = [&](double p) { return gini_integrand(Q, curve, p); };
  QuadratureResult r;
  try {
    r = integrate(f, 0.0, 1.0, quad);
  } catch (const DegenerateSampleError&) {
    throw NumericalError("quantile of " + dist.to_string() + " underflows to zero");
  }
  return {kind, r.value, std::nullopt, IndexMethod::quadrature, 0, std::nullopt};
}

double qdi_via_ratio(const Distribution& dist, const QuadratureSpec& quad) {
  const auto Q = [&](double u) { return dist.quantile(u); };
  const auto r =
      integrate([&](double p) { return q_curve_with(Q, CurveKind::R, p); }, 0.0, 1.0, quad);
  return 1.0 - r.value;
}

IndexEstimate index_estimate_closed_form(const QuantileEstimate& est, IndexKind kind) {
  if (kind != IndexKind::qZI && kind != IndexKind::qDI)
    throw InvalidArgument("closed-form estimates exist only for qZI and qDI");
  const bool qz = kind == IndexKind::qZI;

  std::vector<double> cuts = curve_breakpoints(est, qz, !qz);
  cuts.insert(cuts.begin(), 0.0);
  cuts.push_back(1.0);

  double ratio_integral = 0.0;
  if (est.scheme() == QuantileScheme::E) {
    // Step functions: the ratio is constant on every piece.
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double lo = cuts[i], hi = cuts[i + 1];
      const double mid = 0.5 * (lo + hi);
      const double num = est.knot_value(0.5 * mid);
      const double den = est.knot_value(denominator_argument(kind, mid));
      if (!(den > 0.0)) degenerate_piece(est, kind, lo, hi);
      ratio_integral += (hi - lo) * (num / den);
    }
  } else {
    std::vector<double> num(cuts.size()), den(cuts.size());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      num[i] = est.knot_value(0.5 * cuts[i]);
      den[i] = est.knot_value(denominator_argument(kind, cuts[i]));
    }
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double w = cuts[i + 1] - cuts[i];
      const double na = num[i], nb = num[i + 1], da = den[i], db = den[i + 1];
      if (da > 0.0 && db > 0.0) {
        ratio_integral += mobius_piece(w, na, nb, da, db);
      } else if (da > 0.0 || db > 0.0) {
        // D vanishes linearly at one end; N <= D forces N to vanish there too,
        // so the ratio is constant on the piece.
        ratio_integral += w * (da > 0.0 ? na / da : nb / db);
      } else {
        degenerate_piece(est, kind, cuts[i], cuts[i + 1]);
      }
    }
  }
  return {kind, 1.0 - ratio_integral, est.scheme(), IndexMethod::closed_form,
          est.sample().size(), std::nullopt};
}

IndexEstimate index_estimate_closed_form(const Sample& sample, QuantileScheme scheme,
                                         IndexKind kind) {
  return index_estimate_closed_form(QuantileEstimate(sample, scheme), kind);
}

IndexEstimate index_estimate_quadrature(const QuantileEstimate& est, IndexKind kind,
                                        const QuadratureSpec& quad) {
  require_quantile_index(kind);
  const CurveKind curve = curve_of(kind);
  const std::vector<double> cuts = curve_breakpoints(est, true, true);
  Integrand f;
  if (kind == IndexKind::qZI || kind == IndexKind::qDI)
    f = [&](double p) { return q_curve_with(est, curve, p); };
  else
    f = [&](double p) { return gini_integrand(est, curve, p); };
  const auto r = integrate(f, 0.0, 1.0, quad, cuts);
  return {kind, r.value, est.scheme(), IndexMethod::quadrature, est.sample().size(),
          std::nullopt};
}

IndexEstimate classical_index(const Distribution& dist, IndexKind kind, const QuadratureSpec& quad) {
  if (!is_classical(kind))
    throw InvalidArgument("index " + std::string(to_string(kind)) + " is not a classical index");
  if (!dist.has_finite_mean())
    throw InfiniteMeanError("classical index " + std::string(to_string(kind)) +
                            " needs a finite mean; " + dist.to_string() + " has none");
  QuadratureSpec inner = quad;
  inner.abs_tol = quad.abs_tol * 0.1;
  const CurveKind curve = curve_of(kind);
  Integrand f;
  switch (kind) {
    case IndexKind::GI:
      f = [&](double p) { return 2.0 * (p - classical_curve(dist, CurveKind::L, p, inner)); };
      break;
    case IndexKind::BI:
      f = [&](double p) { return 1.0 - classical_curve(dist, CurveKind::B, p, inner); };
      break;
    default:
      f = [&](double p) { return classical_curve(dist, curve, p, inner); };
      break;
  }
  const auto r = integrate(f, 0.0, 1.0, quad);
  return {kind, r.value, std::nullopt, IndexMethod::quadrature, 0, std::nullopt};
}

IndexEstimate mc_index_oracle(const Distribution& dist, IndexKind kind, std::size_t reps,
                              std::uint64_t seed) {
  if (kind != IndexKind::qZI && kind != IndexKind::qDI)
    throw InvalidArgument("the Monte Carlo oracle covers qZI and qDI only");
  if (reps == 0) throw InvalidArgument("Monte Carlo oracle needs reps >= 1");
  const CounterRng rng(seed);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < reps; ++i) {
    const double r = 0.5 * rng.uniform(i);
    const double x = dist.quantile(r);
    const double y = kind == IndexKind::qZI ? dist.quantile(0.5 + r) : dist.quantile(1.0 - r);
    const double v = (y - x) / y;
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  std::optional<double> se;
  if (reps > 1) se = std::sqrt(m2 / static_cast<double>(reps - 1) / static_cast<double>(reps));
  return {kind, mean, std::nullopt, IndexMethod::monte_carlo, reps, se};
}

}  // namespace qineq
