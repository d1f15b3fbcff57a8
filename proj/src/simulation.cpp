#include "qineq/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "qineq/error.hpp"
#include "qineq/format.hpp"
#include "qineq/rng.hpp"

namespace qineq {

void SimulationConfig::validate() const {
  if (sample_sizes.empty()) throw InvalidArgument("simulation '" + name + "': no sample sizes");
  for (std::size_t n : sample_sizes)
    if (n == 0) throw InvalidArgument("simulation '" + name + "': sample size 0");
  if (schemes.empty()) throw InvalidArgument("simulation '" + name + "': no quantile schemes");
  if (kinds.empty()) throw InvalidArgument("simulation '" + name + "': no index kinds");
  for (IndexKind k : kinds)
    if (k != IndexKind::qZI && k != IndexKind::qDI)
      throw InvalidArgument("simulation '" + name + "': kind " + std::string(to_string(k)) +
                            " is not simulated (use qZI or qDI)");
  if (replications == 0) throw InvalidArgument("simulation '" + name + "': replications = 0");
  if (mise_grid < 16) throw InvalidArgument("simulation '" + name + "': mise_grid must be >= 16");
}

const SimulationCell& SimulationReport::cell(IndexKind kind, QuantileScheme scheme,
                                             std::size_t n) const {
  for (const auto& c : cells)
    if (c.kind == kind && c.scheme == scheme && c.n == n) return c;
  throw InvalidArgument("report has no cell for (" + std::string(to_string(kind)) + ", " +
                        std::string(to_string(scheme)) + ", n=" + std::to_string(n) + ")");
}

double integrated_squared_error(const QuantileEstimate& est, CurveKind kind,
                                std::span<const double> exact) {
  const std::size_t g = exact.size();
  const double gd = static_cast<double>(g);
  double sum = 0.0;
  for (std::size_t j = 0; j < g; ++j) {
    const double p = (static_cast<double>(j) + 0.5) / gd;
    const double diff = q_curve_with(est, kind, p) - exact[j];
    sum += diff * diff;
  }
  return sum / gd;
}

double mise_single(const QuantileEstimate& est, CurveKind kind, const Distribution& dist,
                   std::size_t grid) {
  if (grid == 0) throw InvalidArgument("MISE grid must be positive");
  if (kind != CurveKind::qZ && kind != CurveKind::qD)
    throw InvalidArgument("MISE is defined for the qZ and qD curves");
  std::vector<double> exact;
  exact.reserve(grid);
  for (double p : uniform_grid(grid)) exact.push_back(q_curve(dist, kind, p));
  return integrated_squared_error(est, kind, exact);
}

double type7_quantile(std::vector<double> values, double p) {
  if (values.empty()) throw InvalidArgument("quantile of an empty vector");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

namespace {

struct ReplicateFailure {
  std::size_t replicate = std::numeric_limits<std::size_t>::max();
  bool numerical = false;
  std::string message;
};

}  // namespace

SimulationReport run_experiment(const SimulationConfig& config, const RunOptions& opts) {
  config.validate();
  SimulationReport report;
  report.config = config;

  const std::size_t nk = config.kinds.size();
  const std::size_t ns = config.schemes.size();
  std::vector<std::vector<double>> exact_curves(nk);
  const std::vector<double> grid = uniform_grid(config.mise_grid);
  for (std::size_t k = 0; k < nk; ++k) {
    const IndexKind kind = config.kinds[k];
    report.exact_index[kind] = index_exact(config.dist, kind).value;
    const CurveKind curve = curve_of(kind);
    exact_curves[k].reserve(grid.size());
    for (double p : grid) exact_curves[k].push_back(q_curve(config.dist, curve, p));
  }

  const std::size_t reps = config.replications;
  const std::size_t slots = nk * ns;
  for (std::size_t n : config.sample_sizes) {
    // [replicate][kind * ns + scheme]
    std::vector<double> index_values(reps * slots), ise_values(reps * slots);
    std::vector<ReplicateFailure> failures;

    auto replicate = [&](std::size_t i, ReplicateFailure& failure) {
      QuantileScheme current = config.schemes.front();
      try {
        const auto sample = std::make_shared<const Sample>(
            draw_sample(config.dist, n, replicate_seed(config.master_seed, n, i)));
        for (std::size_t s = 0; s < ns; ++s) {
          current = config.schemes[s];
          const QuantileEstimate est(sample, current);
          for (std::size_t k = 0; k < nk; ++k) {
            const std::size_t slot = i * slots + k * ns + s;
            index_values[slot] = index_estimate_closed_form(est, config.kinds[k]).value;
            ise_values[slot] =
                integrated_squared_error(est, curve_of(config.kinds[k]), exact_curves[k]);
          }
        }
      } catch (const Error& e) {
        if (i < failure.replicate) {
          std::ostringstream msg;
          msg << "simulation '" << config.name << "' failed at n=" << n << ", replicate " << i
              << ", scheme " << to_string(current) << ": " << e.what();
          failure = {i, dynamic_cast<const NumericalError*>(&e) != nullptr, msg.str()};
        }
      }
    };

    if (opts.exec == Execution::parallel) {
      const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
      failures.resize(static_cast<std::size_t>(threads));
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
      for (std::size_t i = 0; i < reps; ++i)
        replicate(i, failures[static_cast<std::size_t>(omp_get_thread_num())]);
    } else {
      failures.resize(1);
      for (std::size_t i = 0; i < reps; ++i) replicate(i, failures[0]);
    }

    const auto first = std::min_element(
        failures.begin(), failures.end(),
        [](const ReplicateFailure& a, const ReplicateFailure& b) { return a.replicate < b.replicate; });
    if (first != failures.end() && !first->message.empty()) {
      if (first->numerical) throw NumericalError(first->message);
      throw InvalidArgument(first->message);
    }

    // Reduce in replicate order.
    for (std::size_t k = 0; k < nk; ++k) {
      for (std::size_t s = 0; s < ns; ++s) {
        SimulationCell cell;
        cell.kind = config.kinds[k];
        cell.scheme = config.schemes[s];
        cell.n = n;
        cell.exact_index = report.exact_index[cell.kind];
        std::vector<double> values(reps);
        double se_sum = 0.0, ise_sum = 0.0;
        for (std::size_t i = 0; i < reps; ++i) {
          const double v = index_values[i * slots + k * ns + s];
          values[i] = v;
          se_sum += (v - cell.exact_index) * (v - cell.exact_index);
          ise_sum += ise_values[i * slots + k * ns + s];
        }
        cell.index_mse = se_sum / static_cast<double>(reps);
        cell.curve_mise = ise_sum / static_cast<double>(reps);
        cell.index_median = type7_quantile(values, 0.5);
        cell.index_q1 = type7_quantile(values, 0.25);
        cell.index_q3 = type7_quantile(values, 0.75);
        if (config.keep_raw) cell.raw = std::move(values);
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

nlohmann::json SimulationReport::to_json() const {
  nlohmann::json j;
  j["name"] = config.name;
  j["dist"] = config.dist.to_string();
  j["replications"] = config.replications;
  j["master_seed"] = config.master_seed;
  j["mise_grid"] = config.mise_grid;
  j["sample_sizes"] = config.sample_sizes;
  nlohmann::json exact = nlohmann::json::object();
  for (const auto& [kind, value] : exact_index) exact[std::string(to_string(kind))] = value;
  j["exact"] = exact;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : cells) {
    arr.push_back({{"kind", std::string(to_string(c.kind))},
                   {"scheme", std::string(to_string(c.scheme))},
                   {"n", c.n},
                   {"exact", c.exact_index},
                   {"median", c.index_median},
                   {"q1", c.index_q1},
                   {"q3", c.index_q3},
                   {"mse", c.index_mse},
                   {"mise", c.curve_mise},
                   {"mise_x1000", 1000.0 * c.curve_mise}});
  }
  j["cells"] = arr;
  return j;
}

void SimulationReport::write_cells_csv(std::ostream& out) const {
  out << "kind,scheme,n,exact,median,q1,q3,mse,mise\n";
  for (const auto& c : cells)
    out << to_string(c.kind) << ',' << to_string(c.scheme) << ',' << c.n << ','
        << format_number(c.exact_index, 17) << ',' << format_number(c.index_median, 17) << ','
        << format_number(c.index_q1, 17) << ',' << format_number(c.index_q3, 17) << ','
        << format_number(c.index_mse, 17) << ',' << format_number(c.curve_mise, 17) << '\n';
}

void SimulationReport::write_raw_csv(std::ostream& out) const {
  out << "n,replicate,kind,scheme,value\n";
  for (const auto& c : cells)
    for (std::size_t i = 0; i < c.raw.size(); ++i)
      out << c.n << ',' << i << ',' << to_string(c.kind) << ',' << to_string(c.scheme) << ','
          << format_number(c.raw[i], 17) << '\n';
}

bool operator==(const SimulationReport& a, const SimulationReport& b) {
  if (a.to_json() != b.to_json() || a.cells.size() != b.cells.size()) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i)
    if (a.cells[i].raw != b.cells[i].raw) return false;
  return true;
}

namespace {

std::vector<std::pair<std::string, std::string>> row_params(const Distribution& dist) {
  if (const auto* d = std::get_if<Dagum>(&dist.params())) {
    std::vector<std::pair<std::string, std::string>> out;
    if (d->sigma != 1.0) out.emplace_back("sigma", shortest(d->sigma));
    out.emplace_back("b", shortest(d->b));
    out.emplace_back("a", shortest(d->a));
    return out;
  }
  const auto& p = std::get<Pareto>(dist.params());
  return {{"xm", shortest(p.xm)}, {"alpha", shortest(p.alpha)}};
}

}  // namespace

std::vector<MiseTable> report_to_tables(std::span<const SimulationReport> reports) {
  std::vector<MiseTable> tables;
  if (reports.empty()) return tables;
  const auto& ref = reports.front().config;
  for (const auto& r : reports)
    if (r.config.schemes != ref.schemes || r.config.kinds != ref.kinds)
      throw InvalidArgument("reports combined into one table must share schemes and kinds");

  std::vector<std::size_t> sizes;
  for (const auto& r : reports)
    for (std::size_t n : r.config.sample_sizes)
      if (std::find(sizes.begin(), sizes.end(), n) == sizes.end()) sizes.push_back(n);

  for (std::size_t n : sizes) {
    MiseTable t;
    t.n = n;
    for (IndexKind k : ref.kinds)
      for (QuantileScheme s : ref.schemes)
        t.columns.push_back(std::string(to_string(curve_of(k))) + ":" + std::string(to_string(s)));
    for (const auto& r : reports) {
      if (std::find(r.config.sample_sizes.begin(), r.config.sample_sizes.end(), n) ==
          r.config.sample_sizes.end())
        continue;
      std::string key;
      for (const auto& [name, value] : row_params(r.config.dist))
        key += (key.empty() ? "" : ",") + name + "=" + value;
      t.row_keys.push_back(key);
      std::vector<double> row;
      for (IndexKind k : ref.kinds)
        for (QuantileScheme s : ref.schemes) row.push_back(1000.0 * r.cell(k, s, n).curve_mise);
      t.mise_x1000.push_back(std::move(row));
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

void write_table_csv(const MiseTable& table, std::ostream& out) {
  out << "n,row";
  for (const auto& c : table.columns) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < table.row_keys.size(); ++r) {
    out << table.n << ",\"" << table.row_keys[r] << '"';
    for (double v : table.mise_x1000[r]) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

void write_table_text(const MiseTable& table, std::ostream& out) {
  std::size_t key_width = 4;
  for (const auto& k : table.row_keys) key_width = std::max(key_width, k.size());
  out << "MISE x 1000, n = " << table.n << '\n';
  out << std::left << std::setw(static_cast<int>(key_width)) << "row";
  for (const auto& c : table.columns) out << std::right << std::setw(11) << c;
  out << '\n';
  for (std::size_t r = 0; r < table.row_keys.size(); ++r) {
    const auto& row = table.mise_x1000[r];
    out << std::left << std::setw(static_cast<int>(key_width)) << table.row_keys[r];
    for (std::size_t c = 0; c < row.size(); ++c) {
      // Minimum within the block of columns sharing this curve prefix.
      const std::string prefix = table.columns[c].substr(0, table.columns[c].find(':'));
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t o = 0; o < row.size(); ++o)
        if (table.columns[o].rfind(prefix + ":", 0) == 0) best = std::min(best, row[o]);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f%s", row[c], row[c] == best ? "*" : " ");
      out << std::right << std::setw(11) << buf;
    }
    out << '\n';
  }
}

}  // namespace qineq
