#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qineq/curves.hpp"
#include "qineq/distributions.hpp"
#include "qineq/quadrature.hpp"
#include "qineq/quantile.hpp"

namespace qineq {

enum class IndexKind { qZI, qDI, G1, G2, G3, GI, BI, ZI, DI };

std::string_view to_string(IndexKind k) noexcept;
IndexKind parse_index_kind(std::string_view name);
bool is_classical(IndexKind k) noexcept;
/// Curve whose integral defines the index (qZ for qZI, qD for qDI, ...).
CurveKind curve_of(IndexKind k);

enum class IndexMethod { closed_form, quadrature, monte_carlo };
std::string_view to_string(IndexMethod m) noexcept;

struct IndexEstimate {
  IndexKind kind = IndexKind::qZI;
  double value = 0.0;
  /// nullopt: exact (parametric) value.
  std::optional<QuantileScheme> scheme;
  IndexMethod method = IndexMethod::quadrature;
  /// Sample size, or number of draws for monte_carlo, or 0 for exact values.
  std::size_t n = 0;
  std::optional<double> std_error;

  /// {"kind", "value", "scheme", "method", "n"[, "std_error"]}; scheme is
  /// "exact" for parametric values.
  nlohmann::json to_json(int significant_digits = 17) const;
};

/// Quadrature spec used by sample-based quadrature estimates: the plug-in
/// curves have one kink per knot, so allow many panels.
inline constexpr QuadratureSpec kSampleQuadrature{.abs_tol = 1e-11, .rel_tol = 0.0,
                                                  .max_subdivisions = 200000};

/// Exact index of a parametric distribution by quadrature of its curve.
IndexEstimate index_exact(const Distribution& dist, IndexKind kind,
                          const QuadratureSpec& quad = {.abs_tol = 1e-11});

/// qDI computed through the symmetric-ratio route 1 - integral of R(p).
double qdi_via_ratio(const Distribution& dist, const QuadratureSpec& quad = {.abs_tol = 1e-11});

/// Exact integral of the plug-in qZ or qD curve. Partitions (0,1) where an
/// argument quantile crosses a knot; on every piece the ratio of quantiles is
/// a ratio of linear functions of p, integrated analytically.
/// Throws DegenerateSampleError when the denominator vanishes on a piece of
/// positive length.
IndexEstimate index_estimate_closed_form(const QuantileEstimate& est, IndexKind kind);
IndexEstimate index_estimate_closed_form(const Sample& sample, QuantileScheme scheme,
                                         IndexKind kind);

/// Adaptive quadrature of the plug-in curve (qZI, qDI) or of 2(p - L_i(p))
/// (G1, G2, G3). The estimate's breakpoints seed the partition.
IndexEstimate index_estimate_quadrature(const QuantileEstimate& est, IndexKind kind,
                                        const QuadratureSpec& quad = kSampleQuadrature);

/// GI, BI, ZI and DI of a finite-mean distribution.
IndexEstimate classical_index(const Distribution& dist, IndexKind kind,
                              const QuadratureSpec& quad = {.abs_tol = 1e-9});

/// Monte Carlo evaluation of qZI or qDI: with r ~ U(0, 1/2), X = Q(r) and
/// Y = Q(1/2 + r) (qZI) or Y = Q(1 - r) (qDI), averages (Y - X)/Y.
IndexEstimate mc_index_oracle(const Distribution& dist, IndexKind kind, std::size_t reps,
                              std::uint64_t seed);

}  // namespace qineq
