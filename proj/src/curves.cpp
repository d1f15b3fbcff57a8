#include "qineq/curves.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "qineq/error.hpp"
#include "qineq/format.hpp"

namespace qineq {

std::string_view to_string(CurveKind k) noexcept {
  switch (k) {
    case CurveKind::qZ: return "qZ";
    case CurveKind::qD: return "qD";
    case CurveKind::qB: return "qB";
    case CurveKind::L1: return "L1";
    case CurveKind::L2: return "L2";
    case CurveKind::L3: return "L3";
    case CurveKind::R: return "R";
    case CurveKind::L: return "L";
    case CurveKind::B: return "B";
    case CurveKind::Z: return "Z";
    case CurveKind::D: return "D";
    case CurveKind::M: return "M";
  }
  return "?";
}

CurveKind parse_curve_kind(std::string_view name) {
  for (CurveKind k : {CurveKind::qZ, CurveKind::qD, CurveKind::qB, CurveKind::L1, CurveKind::L2,
                      CurveKind::L3, CurveKind::R, CurveKind::L, CurveKind::B, CurveKind::Z,
                      CurveKind::D, CurveKind::M})
    if (to_string(k) == name) return k;
  throw InvalidArgument("unknown curve kind '" + std::string(name) + "'");
}

bool is_classical(CurveKind k) noexcept {
  switch (k) {
    case CurveKind::L:
    case CurveKind::B:
    case CurveKind::Z:
    case CurveKind::D:
    case CurveKind::M: return true;
    default: return false;
  }
}

double QuantileSource::quantile(double p) const {
  if (const auto* d = std::get_if<Distribution>(&source_)) return d->quantile(p);
  return std::get<QuantileEstimate>(source_)(p);
}

namespace {

void require_open_unit(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << "curve argument must lie in (0,1), got " << p;
    throw InvalidArgument(msg.str());
  }
}

[[noreturn]] void degenerate(CurveKind kind, double p) {
  std::ostringstream msg;
  msg << "denominator quantile of " << to_string(kind) << " is zero at p = " << p
      << " (too many zeros in the sample)";
  throw DegenerateSampleError(msg.str());
}

}  // namespace

double combine_quantiles(CurveKind kind, double p, double lower, double upper) {
  if (kind == CurveKind::L3) {
    const double denom = lower + upper;
    if (!(denom > 0.0)) degenerate(kind, p);
    return 2.0 * p * lower / denom;
  }
  if (!(upper > 0.0)) degenerate(kind, p);
  const double ratio = lower / upper;
  switch (kind) {
    case CurveKind::qZ:
    case CurveKind::qD: return 1.0 - ratio;
    case CurveKind::qB:
    case CurveKind::R: return ratio;
    case CurveKind::L1:
    case CurveKind::L2: return p * ratio;
    default: break;
  }
  throw InvalidArgument("curve kind " + std::string(to_string(kind)) + " is not a quantile curve");
}

double q_curve(const QuantileSource& src, CurveKind kind, double p) {
  if (is_classical(kind))
    throw InvalidArgument("curve kind " + std::string(to_string(kind)) +
                          " is classical; use classical_curve");
  require_open_unit(p);
  if (const Distribution* dist = src.distribution()) {
    try {
      return q_curve_with([&](double u) { return dist->quantile(u); }, kind, p);
    } catch (const DegenerateSampleError&) {
      throw NumericalError("quantile of " + dist->to_string() + " underflows to zero near p = " +
                           format_number(p));
    }
  }
  return q_curve_with([&](double u) { return src.quantile(u); }, kind, p);
}

double classical_curve(const Distribution& dist, CurveKind kind, double p,
                       const QuadratureSpec& quad) {
  if (!is_classical(kind))
    throw InvalidArgument("curve kind " + std::string(to_string(kind)) + " is not classical");
  require_open_unit(p);
  const double mu = dist.mean();
  auto lorenz = [&](double x) {
    const auto Q = [&](double u) { return dist.quantile(u); };
    return integrate(Q, 0.0, x, quad).value / mu;
  };
  switch (kind) {
    case CurveKind::L: return lorenz(p);
    case CurveKind::B: return lorenz(p) / p;
    case CurveKind::M: return 1.0 - lorenz(1.0 - p);
    case CurveKind::Z: {
      const double l = lorenz(p);
      return 1.0 - (l / p) * ((1.0 - p) / (1.0 - l));
    }
    case CurveKind::D: {
      const double l = lorenz(p);
      const double m = 1.0 - lorenz(1.0 - p);
      return 1.0 - l / m;
    }
    default: break;
  }
  throw InvalidArgument("unreachable curve kind");
}

std::vector<double> uniform_grid(std::size_t size) {
  if (size == 0) throw InvalidArgument("grid size must be at least 1");
  std::vector<double> g(size);
  const double n = static_cast<double>(size);
  for (std::size_t i = 0; i < size; ++i) g[i] = (static_cast<double>(i) + 0.5) / n;
  return g;
}

CurveTable tabulate(const QuantileSource& src, CurveKind kind, std::span<const double> grid,
                    const QuadratureSpec& quad) {
  if (grid.empty()) throw InvalidArgument("curve grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] < 1.0)) throw InvalidArgument("curve grid must lie in (0,1)");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw InvalidArgument("curve grid must be strictly increasing");
  }
  CurveTable table{kind, {grid.begin(), grid.end()}, {}};
  table.values.reserve(grid.size());
  if (is_classical(kind)) {
    const Distribution* dist = src.distribution();
    if (!dist)
      throw InvalidArgument("classical curve " + std::string(to_string(kind)) +
                            " needs a parametric distribution");
    for (double p : grid) table.values.push_back(classical_curve(*dist, kind, p, quad));
  } else {
    for (double p : grid) table.values.push_back(q_curve(src, kind, p));
  }
  return table;
}

void CurveTable::write_csv(std::ostream& out, int significant_digits) const {
  out << "p,value\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    out << format_number(grid[i], significant_digits) << ','
        << format_number(values[i], significant_digits) << '\n';
}

std::string CurveTable::to_json(int significant_digits) const {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < grid.size(); ++i)
    arr.push_back({round_significant(grid[i], significant_digits),
                   round_significant(values[i], significant_digits)});
  return arr.dump();
}

}  // namespace qineq
