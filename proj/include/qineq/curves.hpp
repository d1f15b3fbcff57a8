#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qineq/distributions.hpp"
#include "qineq/quadrature.hpp"
#include "qineq/quantile.hpp"

namespace qineq {

enum class CurveKind { qZ, qD, qB, L1, L2, L3, R, L, B, Z, D, M };

std::string_view to_string(CurveKind k) noexcept;
CurveKind parse_curve_kind(std::string_view name);
/// L, B, Z, D and M need a finite-mean parametric source.
bool is_classical(CurveKind k) noexcept;

/// Anything that exposes Q(p): a sample-based estimate or an exact
/// parametric distribution.
class QuantileSource {
 public:
  QuantileSource(QuantileEstimate estimate) : source_(std::move(estimate)) {}
  QuantileSource(Distribution dist) : source_(dist) {}

  double quantile(double p) const;
  bool is_parametric() const noexcept { return std::holds_alternative<Distribution>(source_); }
  const Distribution* distribution() const noexcept { return std::get_if<Distribution>(&source_); }
  const QuantileEstimate* estimate() const noexcept {
    return std::get_if<QuantileEstimate>(&source_);
  }

 private:
  std::variant<QuantileEstimate, Distribution> source_;
};

/// Combines the quantiles a curve of `kind` depends on. `lower` is Q(p/2);
/// `upper` is Q((1+p)/2) for qZ, Q(1/2) for qB/L1 and Q(1-p/2) otherwise.
/// Throws DegenerateSampleError when the denominator quantile is zero.
double combine_quantiles(CurveKind kind, double p, double lower, double upper);

/// Quantile curves qZ, qD, qB, L1, L2, L3 and R at p in (0,1).
double q_curve(const QuantileSource& src, CurveKind kind, double p);

/// Quantile curve from an arbitrary quantile function; used by hot loops that
/// already hold a concrete estimate.
template <class QuantileFn>
double q_curve_with(const QuantileFn& Q, CurveKind kind, double p) {
  const double lower = Q(0.5 * p);
  double upper;
  switch (kind) {
    case CurveKind::qZ: upper = Q(0.5 * (1.0 + p)); break;
    case CurveKind::qB:
    case CurveKind::L1: upper = Q(0.5); break;
    default: upper = Q(1.0 - 0.5 * p); break;
  }
  return combine_quantiles(kind, p, lower, upper);
}

/// Classical Lorenz-based curves L, B, Z, D, M for a finite-mean distribution.
/// L(p) = (1/mu) * integral_0^p Q(u) du by adaptive quadrature.
double classical_curve(const Distribution& dist, CurveKind kind, double p,
                       const QuadratureSpec& quad = {});

struct CurveTable {
  CurveKind kind = CurveKind::qZ;
  std::vector<double> grid;
  std::vector<double> values;

  /// Header `p,value`, one row per grid point.
  void write_csv(std::ostream& out, int significant_digits = 6) const;
  /// JSON array of [p, value] pairs.
  std::string to_json(int significant_digits = 17) const;
};

/// Midpoint grid (i - 1/2)/size, i = 1..size.
std::vector<double> uniform_grid(std::size_t size);

CurveTable tabulate(const QuantileSource& src, CurveKind kind, std::span<const double> grid,
                    const QuadratureSpec& quad = {});

}  // namespace qineq
