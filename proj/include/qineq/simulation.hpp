#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qineq/curves.hpp"
#include "qineq/distributions.hpp"
#include "qineq/indices.hpp"
#include "qineq/quadrature.hpp"
#include "qineq/quantile.hpp"

namespace qineq {

struct SimulationConfig {
  std::string name = "experiment";
  Distribution dist = Distribution::dagum(1.0, 2.0, 1.0);
  std::vector<std::size_t> sample_sizes{50, 100, 500};
  std::vector<QuantileScheme> schemes{kAllSchemes.begin(), kAllSchemes.end()};
  std::size_t replications = 1000;
  std::uint64_t master_seed = 0;
  std::size_t mise_grid = 512;
  std::vector<IndexKind> kinds{IndexKind::qZI, IndexKind::qDI};
  /// Keep every per-replicate index estimate in the report.
  bool keep_raw = false;

  /// Throws InvalidArgument on empty lists, replications = 0, mise_grid < 16
  /// or kinds other than qZI/qDI.
  void validate() const;
};

struct SimulationCell {
  IndexKind kind = IndexKind::qZI;
  QuantileScheme scheme = QuantileScheme::E;
  std::size_t n = 0;
  double exact_index = 0.0;
  double index_median = 0.0;
  double index_q1 = 0.0;
  double index_q3 = 0.0;
  double index_mse = 0.0;
  /// MISE of the matching curve estimator (qZ for qZI, qD for qDI).
  double curve_mise = 0.0;
  std::vector<double> raw;
};

struct SimulationReport {
  SimulationConfig config;
  std::map<IndexKind, double> exact_index;
  std::vector<SimulationCell> cells;

  const SimulationCell& cell(IndexKind kind, QuantileScheme scheme, std::size_t n) const;

  nlohmann::json to_json() const;
  /// One row per cell: kind,scheme,n,exact,median,q1,q3,mse,mise.
  void write_cells_csv(std::ostream& out) const;
  /// Per-replicate estimates (requires keep_raw): n,replicate,kind,scheme,value.
  void write_raw_csv(std::ostream& out) const;

  friend bool operator==(const SimulationReport& a, const SimulationReport& b);
};

struct RunOptions {
  Execution exec = Execution::parallel;
  /// 0 = OpenMP default.
  int threads = 0;
};

/// Integral over (0,1) of [estimated curve - exact curve]^2 by the midpoint
/// rule on `grid` uniform subintervals.
double mise_single(const QuantileEstimate& est, CurveKind kind, const Distribution& dist,
                   std::size_t grid = 512);

/// Same, against precomputed exact curve values on uniform_grid(exact.size()).
double integrated_squared_error(const QuantileEstimate& est, CurveKind kind,
                                std::span<const double> exact);

/// Replicate loop: for every (n, i) draws a sample with
/// replicate_seed(master_seed, n, i) and evaluates every (kind, scheme).
/// Results are independent of `opts` (thread count or serial execution).
/// A failing replicate raises InvalidArgument/NumericalError naming (n, i,
/// scheme).
SimulationReport run_experiment(const SimulationConfig& config, const RunOptions& opts = {});

/// R's default (type 7) quantile of unsorted data.
double type7_quantile(std::vector<double> values, double p);

/// Tables of MISE x 1000 in the published layout: one table per sample size,
/// one row per experiment (keyed by its distribution parameters), columns
/// qZ:<scheme>... then qD:<scheme>...
struct MiseTable {
  std::size_t n = 0;
  std::vector<std::string> row_keys;                  // e.g. "b=0.5,a=2"
  std::vector<std::string> columns;                   // e.g. "qZ:WG"
  std::vector<std::vector<double>> mise_x1000;        // [row][column]
};

std::vector<MiseTable> report_to_tables(std::span<const SimulationReport> reports);
void write_table_csv(const MiseTable& table, std::ostream& out);
/// Aligned text; the minimum of each curve block in a row is starred.
void write_table_text(const MiseTable& table, std::ostream& out);

}  // namespace qineq
