#include "qineq/quantile.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>
#include <string>

#include "qineq/error.hpp"

namespace qineq {

std::string_view to_string(QuantileScheme s) noexcept {
  switch (s) {
    case QuantileScheme::E: return "E";
    case QuantileScheme::H: return "H";
    case QuantileScheme::HF: return "HF";
    case QuantileScheme::WG: return "WG";
  }
  return "?";
}

QuantileScheme parse_scheme(std::string_view name) {
  if (name == "E") return QuantileScheme::E;
  if (name == "H") return QuantileScheme::H;
  if (name == "HF") return QuantileScheme::HF;
  if (name == "WG") return QuantileScheme::WG;
  throw InvalidArgument("unknown quantile scheme '" + std::string(name) + "' (expected E|H|HF|WG)");
}

int reference_type(QuantileScheme s) noexcept {
  switch (s) {
    case QuantileScheme::E: return 1;
    case QuantileScheme::H: return 5;
    case QuantileScheme::HF: return 8;
    case QuantileScheme::WG: return 6;
  }
  return 0;
}

double edf(const Sample& sample, double t) {
  const auto v = sample.values();
  const auto count = std::upper_bound(v.begin(), v.end(), t) - v.begin();
  return static_cast<double>(count) / static_cast<double>(v.size());
}

namespace {

double plotting_offset(QuantileScheme s) {
  switch (s) {
    case QuantileScheme::H: return 0.5;
    case QuantileScheme::HF: return 1.0 / 3.0;
    case QuantileScheme::WG: return 0.0;
    case QuantileScheme::E: break;
  }
  throw InvalidArgument("scheme E has no plotting positions");
}

}  // namespace

std::vector<double> plotting_positions(QuantileScheme scheme, std::size_t n) {
  if (n == 0) throw InvalidArgument("plotting positions need n >= 1");
  const double a = plotting_offset(scheme);
  const double nd = static_cast<double>(n);
  std::vector<double> p(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    switch (scheme) {
      case QuantileScheme::H: p[k - 1] = (kd - 0.5) / nd; break;
      case QuantileScheme::HF: p[k - 1] = (kd - a) / (nd + a); break;
      case QuantileScheme::WG: p[k - 1] = kd / (nd + 1.0); break;
      case QuantileScheme::E: break;
    }
  }
  return p;
}

QuantileEstimate::QuantileEstimate(std::shared_ptr<const Sample> sample, QuantileScheme scheme)
    : sample_(std::move(sample)), scheme_(scheme) {
  if (!sample_) throw InvalidArgument("quantile estimate needs a sample");
  if (scheme_ != QuantileScheme::E) {
    plot_a_ = plotting_offset(scheme_);
    knots_ = plotting_positions(scheme_, sample_->size());
  }
}

QuantileEstimate::QuantileEstimate(Sample sample, QuantileScheme scheme)
    : QuantileEstimate(std::make_shared<const Sample>(std::move(sample)), scheme) {}

double QuantileEstimate::operator()(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << "quantile probability must lie in (0,1), got " << p;
    throw InvalidArgument(msg.str());
  }
  // Transcription of stats::quantile.default (R >= 4.0), kept operation for
  // operation so results agree to the last bit.
  const auto x = sample_->values();
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  constexpr double fuzz = 4.0 * DBL_EPSILON;
  // Padded order statistic: index 0 and n+1 clamp to the extremes.
  auto order_stat = [&](double j) {
    if (j < 1.0) return x.front();
    if (j > nd) return x.back();
    return x[static_cast<std::size_t>(j) - 1];
  };

  double nppm, j, h;
  if (scheme_ == QuantileScheme::E) {
    nppm = nd * p;
    j = std::floor(nppm + fuzz);
    h = nppm > j ? 1.0 : 0.0;
  } else {
    const double a = plot_a_;
    const double b = plot_a_;
    nppm = a + p * (nd + 1.0 - a - b);
    j = std::floor(nppm + fuzz);
    h = nppm - j;
    if (std::abs(h) < fuzz) h = 0.0;
  }
  const double lo = order_stat(j);
  const double hi = order_stat(j + 1.0);
  double q = lo;
  if (h == 1.0) q = hi;
  if (h > 0.0 && h < 1.0 && lo != hi) q = (1.0 - h) * lo + h * hi;
  return q;
}

double QuantileEstimate::knot_value(double p) const noexcept {
  const auto x = sample_->values();
  const std::size_t n = x.size();
  if (scheme_ == QuantileScheme::E) {
    const double k = std::ceil(static_cast<double>(n) * p);
    if (k <= 1.0) return x.front();
    if (k >= static_cast<double>(n)) return x.back();
    return x[static_cast<std::size_t>(k) - 1];
  }
  if (p <= knots_.front()) return x.front();
  if (p >= knots_.back()) return x.back();
  // First knot strictly greater than p; p lies in [knots_[k-1], knots_[k]).
  const std::size_t k =
      static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), p) - knots_.begin());
  const double p0 = knots_[k - 1];
  const double p1 = knots_[k];
  const double x0 = x[k - 1];
  const double x1 = x[k];
  if (p == p0 || x0 == x1) return x0;
  return x0 + (x1 - x0) * ((p - p0) / (p1 - p0));
}

std::vector<double> QuantileEstimate::breakpoints() const {
  if (scheme_ != QuantileScheme::E) return knots_;
  const std::size_t n = sample_->size();
  std::vector<double> out;
  out.reserve(n > 0 ? n - 1 : 0);
  for (std::size_t k = 1; k < n; ++k)
    out.push_back(static_cast<double>(k) / static_cast<double>(n));
  return out;
}

}  // namespace qineq
