#include "qineq/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qineq/asymptotics.hpp"
#include "qineq/config.hpp"
#include "qineq/curves.hpp"
#include "qineq/data_io.hpp"
#include "qineq/error.hpp"
#include "qineq/format.hpp"
#include "qineq/indices.hpp"
#include "qineq/simulation.hpp"

namespace qineq {

namespace {

using nlohmann::json;

enum class OutputFormat { csv, json };

struct Common {
  std::vector<std::string> schemes;
  std::vector<std::string> kinds;
  std::string out_path;
  std::string format = "csv";
  bool full_precision = false;
  int threads = 0;

  int digits() const { return full_precision ? 17 : 6; }
  OutputFormat output_format() const {
    if (format == "csv") return OutputFormat::csv;
    if (format == "json") return OutputFormat::json;
    throw InvalidArgument("--format must be csv or json, got '" + format + "'");
  }
};

struct DataOptions {
  std::string path;
  std::string column;
  std::string delimiter = ",";
  bool no_header = false;
  std::string group_by;
  bool skip_bad = false;

  DataColumnSpec spec() const {
    if (delimiter == "\\t" || delimiter == "tab") return make('\t');
    if (delimiter.size() != 1) throw InvalidArgument("--delimiter must be a single character");
    return make(delimiter[0]);
  }

 private:
  DataColumnSpec make(char d) const {
    DataColumnSpec s;
    s.path = path;
    s.column = column;
    s.delimiter = d;
    s.has_header = !no_header;
    if (!group_by.empty()) s.group_by = group_by;
    s.skip_bad = skip_bad;
    return s;
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_scheme, bool with_kind) {
  if (with_scheme)
    cmd->add_option("--scheme", c.schemes, "Quantile scheme E|H|HF|WG (repeatable or comma list)")
        ->delimiter(',');
  if (with_kind)
    cmd->add_option("--kind", c.kinds, "Index or curve kind (repeatable or comma list)")->delimiter(',');
  cmd->add_option("--out", c.out_path, "Output file (default: standard output)");
  cmd->add_option("--format", c.format, "csv or json")->default_str("csv");
  cmd->add_flag("--full-precision", c.full_precision, "Print 17 significant digits instead of 6");
}

void add_data(CLI::App* cmd, DataOptions& d, bool required) {
  auto* data = cmd->add_option("--data", d.path, "Delimited text file");
  if (required) data->required();
  cmd->add_option("--column", d.column, "Value column: header name or 1-based position");
  cmd->add_option("--delimiter", d.delimiter, "Field delimiter (single character, or 'tab')");
  cmd->add_flag("--no-header", d.no_header, "The file has no header row");
  cmd->add_option("--group-by", d.group_by, "Column holding group labels");
  cmd->add_flag("--skip-bad", d.skip_bad, "Skip rows whose value does not parse");
}

/// Writes to --out (or `fallback` when unset).
void emit(const std::string& path, std::ostream& fallback,
          const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ostringstream buffer;
  write(buffer);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InvalidArgument("cannot open output file " + path);
  file << buffer.str();
  file.close();
  if (!file) throw InvalidArgument("error writing output file " + path);
}

std::vector<QuantileScheme> schemes_or(const std::vector<std::string>& names,
                                       std::vector<QuantileScheme> fallback) {
  if (names.empty()) return fallback;
  std::vector<QuantileScheme> out;
  for (const auto& n : names) out.push_back(parse_scheme(n));
  return out;
}

std::vector<IndexKind> kinds_or(const std::vector<std::string>& names,
                                std::vector<IndexKind> fallback) {
  if (names.empty()) return fallback;
  std::vector<IndexKind> out;
  for (const auto& n : names) out.push_back(parse_index_kind(n));
  return out;
}

// ---------------------------------------------------------------- index

int cmd_index(const Common& c, const DataOptions& d, const std::string& method,
              std::ostream& out) {
  const auto fmt = c.output_format();
  const auto schemes = schemes_or(c.schemes, {QuantileScheme::HF});
  const auto kinds = kinds_or(c.kinds, {IndexKind::qZI, IndexKind::qDI});
  if (method != "closed_form" && method != "quadrature")
    throw InvalidArgument("--method must be closed_form or quadrature");
  for (IndexKind k : kinds)
    if (is_classical(k))
      throw InvalidArgument("index " + std::string(to_string(k)) +
                            " needs a parametric distribution (use `exact`)");
  if (d.column.empty()) throw InvalidArgument("--column is required");

  const auto groups = read_groups(d.spec());
  struct Row {
    const DataGroup* group;
    IndexEstimate estimate;
  };
  std::vector<Row> rows;
  for (const auto& g : groups) {
    auto sample = std::make_shared<const Sample>(g.sample);
    for (QuantileScheme s : schemes) {
      const QuantileEstimate est(sample, s);
      for (IndexKind k : kinds) {
        const bool closed = method == "closed_form" &&
                            (k == IndexKind::qZI || k == IndexKind::qDI);
        rows.push_back({&g, closed ? index_estimate_closed_form(est, k)
                                   : index_estimate_quadrature(est, k)});
      }
    }
  }

  emit(c.out_path, out, [&](std::ostream& o) {
    if (fmt == OutputFormat::csv) {
      o << "group,n,zero_count,kind,scheme,method,value\n";
      for (const auto& r : rows)
        o << r.group->name << ',' << r.group->sample.size() << ',' << r.group->sample.zero_count()
          << ',' << to_string(r.estimate.kind) << ',' << to_string(*r.estimate.scheme) << ','
          << to_string(r.estimate.method) << ',' << format_number(r.estimate.value, c.digits())
          << '\n';
      return;
    }
    json j;
    j["data"] = d.path;
    j["column"] = d.column;
    json arr = json::array();
    for (const auto& g : groups) {
      json entry{{"name", g.name},
                 {"n", g.sample.size()},
                 {"zero_count", g.sample.zero_count()},
                 {"skipped_rows", g.skipped_rows}};
      json est = json::array();
      for (const auto& r : rows)
        if (r.group == &g) est.push_back(r.estimate.to_json(c.digits()));
      entry["estimates"] = est;
      arr.push_back(entry);
    }
    j["groups"] = arr;
    o << j.dump(2) << '\n';
  });
  return 0;
}

// ---------------------------------------------------------------- curve

int cmd_curve(const Common& c, const DataOptions& d, const std::string& dist_text,
              const std::string& group, std::size_t grid_size, std::ostream& out) {
  const auto fmt = c.output_format();
  if (c.kinds.size() > 1) throw InvalidArgument("curve takes a single --kind");
  if (c.schemes.size() > 1) throw InvalidArgument("curve takes a single --scheme");
  if (grid_size == 0) throw InvalidArgument("--grid must be positive");
  const CurveKind kind = c.kinds.empty() ? CurveKind::qZ : parse_curve_kind(c.kinds.front());
  const bool have_data = !d.path.empty();
  if (have_data == !dist_text.empty())
    throw InvalidArgument("curve needs exactly one of --data and --dist");

  std::optional<QuantileSource> src;
  if (have_data) {
    if (d.column.empty()) throw InvalidArgument("--column is required");
    const std::string scheme_name = c.schemes.empty() ? "HF" : c.schemes.front();
    if (scheme_name == "exact") throw InvalidArgument("scheme 'exact' needs --dist");
    if (is_classical(kind))
      throw InvalidArgument("classical curve " + std::string(to_string(kind)) +
                            " is only available for parametric distributions");
    const auto groups = read_groups(d.spec());
    const std::string wanted = group.empty() ? "All" : group;
    const DataGroup* chosen = nullptr;
    for (const auto& g : groups)
      if (g.name == wanted) chosen = &g;
    if (!chosen) throw InvalidArgument("no group named '" + wanted + "'");
    src.emplace(QuantileEstimate(chosen->sample, parse_scheme(scheme_name)));
  } else {
    if (!c.schemes.empty() && c.schemes.front() != "exact")
      throw InvalidArgument("--dist curves are exact; drop --scheme or pass --scheme exact");
    src.emplace(parse_distribution(dist_text));
  }

  const auto grid = uniform_grid(grid_size);
  const CurveTable table = tabulate(*src, kind, grid);
  emit(c.out_path, out, [&](std::ostream& o) {
    if (fmt == OutputFormat::csv)
      table.write_csv(o, c.digits());
    else
      o << table.to_json(c.digits()) << '\n';
  });
  return 0;
}

// ---------------------------------------------------------------- exact

int cmd_exact(const Common& c, const std::vector<std::string>& dists, std::ostream& out) {
  const auto fmt = c.output_format();
  const auto kinds = kinds_or(c.kinds, {IndexKind::qZI, IndexKind::qDI});
  if (dists.empty()) throw InvalidArgument("exact needs at least one --dist");
  std::vector<std::pair<Distribution, std::vector<IndexEstimate>>> results;
  for (const auto& text : dists) {
    const Distribution dist = parse_distribution(text);
    std::vector<IndexEstimate> row;
    for (IndexKind k : kinds) row.push_back(index_exact(dist, k));
    results.emplace_back(dist, std::move(row));
  }
  emit(c.out_path, out, [&](std::ostream& o) {
    if (fmt == OutputFormat::csv) {
      o << "dist,kind,value\n";
      for (const auto& [dist, row] : results)
        for (const auto& e : row)
          o << '"' << dist.to_string() << "\"," << to_string(e.kind) << ','
            << format_number(e.value, c.digits()) << '\n';
      return;
    }
    json arr = json::array();
    for (const auto& [dist, row] : results) {
      json ind = json::array();
      for (const auto& e : row) ind.push_back(e.to_json(c.digits()));
      arr.push_back({{"dist", dist.to_string()}, {"indices", ind}});
    }
    o << arr.dump(2) << '\n';
  });
  return 0;
}

// ---------------------------------------------------------------- variance

struct SweepOptions {
  std::string dist;
  std::string a_sweep;  // from:to:step
  double b = 1.0;
  double sigma = 1.0;
  double level = 0.95;
};

std::vector<double> parse_sweep(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw InvalidArgument("--a-sweep expects from:to:step");
  const double from = parse_double(trim(parts[0]));
  const double to = parse_double(trim(parts[1]));
  const double step = parse_double(trim(parts[2]));
  if (!(step > 0.0) || !(from > 0.0) || !(to >= from))
    throw InvalidArgument("--a-sweep needs 0 < from <= to and step > 0");
  std::vector<double> out;
  // Index-based so the grid does not accumulate rounding.
  for (std::size_t i = 0;; ++i) {
    const double a = from + static_cast<double>(i) * step;
    if (a > to * (1.0 + 1e-12)) break;
    out.push_back(a);
    if (out.size() > 100000) throw InvalidArgument("--a-sweep grid is too large");
  }
  return out;
}

int cmd_variance(const Common& c, const SweepOptions& s, std::ostream& out) {
  const auto fmt = c.output_format();
  std::vector<VarianceKind> kinds;
  for (const auto& k : c.kinds) {
    if (k == "Z" || k == "qZI")
      kinds.push_back(VarianceKind::Z);
    else if (k == "D" || k == "qDI")
      kinds.push_back(VarianceKind::D);
    else
      throw InvalidArgument("variance --kind must be Z or D, got '" + k + "'");
  }
  if (kinds.empty()) kinds = {VarianceKind::Z, VarianceKind::D};
  if (s.dist.empty() == s.a_sweep.empty())
    throw InvalidArgument("variance needs exactly one of --dist and --a-sweep");

  std::vector<Distribution> dists;
  if (!s.dist.empty())
    dists.push_back(parse_distribution(s.dist));
  else
    for (double a : parse_sweep(s.a_sweep)) dists.push_back(Distribution::dagum(s.sigma, a, s.b));

  VarianceOptions opts;
  opts.exec = c.threads == 1 ? Execution::serial : Execution::parallel;
  std::vector<std::vector<double>> values;
  for (const auto& dist : dists) {
    std::vector<double> row;
    for (VarianceKind k : kinds)
      row.push_back(k == VarianceKind::Z ? sigma2_Z(dist, opts).value : sigma2_D(dist, opts).value);
    values.push_back(std::move(row));
  }

  emit(c.out_path, out, [&](std::ostream& o) {
    if (fmt == OutputFormat::csv) {
      o << "kind,dist,value\n";
      for (std::size_t i = 0; i < dists.size(); ++i)
        for (std::size_t k = 0; k < kinds.size(); ++k)
          o << "sigma2_" << to_string(kinds[k]) << ",\"" << dists[i].to_string() << "\","
            << format_number(values[i][k], c.digits()) << '\n';
      return;
    }
    json arr = json::array();
    for (std::size_t i = 0; i < dists.size(); ++i)
      for (std::size_t k = 0; k < kinds.size(); ++k)
        arr.push_back({{"kind", "sigma2_" + std::string(to_string(kinds[k]))},
                       {"dist", dists[i].to_string()},
                       {"value", round_significant(values[i][k], c.digits())}});
    o << arr.dump(2) << '\n';
  });
  return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> experiments;
  std::size_t replications = 0;
  bool serial = false;
};

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& w) {
  emit(path.string(), std::cout, w);
}

int cmd_simulate(const Common& c, const SimulateOptions& s, std::ostream& out) {
  const auto fmt = c.output_format();
  auto specs = load_simulation_config(s.config);
  if (!s.experiments.empty()) {
    std::vector<ExperimentSpec> chosen;
    for (const auto& name : s.experiments) {
      auto it = std::find_if(specs.begin(), specs.end(),
                             [&](const ExperimentSpec& e) { return e.config.name == name; });
      if (it == specs.end()) throw InvalidArgument("config has no experiment [" + name + "]");
      chosen.push_back(*it);
    }
    specs = std::move(chosen);
  }
  for (auto& spec : specs) {
    if (s.seed) {
      spec.config.master_seed = *s.seed;
      spec.seed_given = true;
    }
    if (!spec.seed_given)
      throw InvalidArgument("experiment [" + spec.config.name +
                            "] has no seed; set `seed` in the config or pass --seed");
    if (s.replications > 0) spec.config.replications = s.replications;
    if (!c.schemes.empty()) spec.config.schemes = schemes_or(c.schemes, {});
    if (!c.kinds.empty()) spec.config.kinds = kinds_or(c.kinds, {});
    spec.config.validate();
  }

  RunOptions run;
  run.exec = s.serial ? Execution::serial : Execution::parallel;
  run.threads = c.threads;
  std::vector<SimulationReport> reports;
  for (const auto& spec : specs) reports.push_back(run_experiment(spec.config, run));
  const auto tables = report_to_tables(reports);

  json summary = json::array();
  for (const auto& r : reports) summary.push_back(r.to_json());

  if (c.out_path.empty()) {
    if (fmt == OutputFormat::json) {
      out << summary.dump(2) << '\n';
    } else {
      for (const auto& t : tables) write_table_csv(t, out);
    }
    return 0;
  }

  const std::filesystem::path dir(c.out_path);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidArgument("cannot create output directory " + dir.string());
  write_file(dir / "summary.json", [&](std::ostream& o) { o << summary.dump(2) << '\n'; });
  for (const auto& r : reports) {
    write_file(dir / (r.config.name + ".cells.csv"), [&](std::ostream& o) { r.write_cells_csv(o); });
    if (r.config.keep_raw)
      write_file(dir / (r.config.name + ".raw.csv"), [&](std::ostream& o) { r.write_raw_csv(o); });
  }
  for (const auto& t : tables) {
    const std::string stem = "mise_n" + std::to_string(t.n);
    write_file(dir / (stem + ".csv"), [&](std::ostream& o) { write_table_csv(t, o); });
    write_file(dir / (stem + ".txt"), [&](std::ostream& o) { write_table_text(t, o); });
  }
  for (const auto& t : tables) write_table_text(t, out);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantile inequality curves and indices"};
  app.name("qineq");
  app.require_subcommand(1);

  Common common;
  DataOptions data;

  auto* index = app.add_subcommand("index", "Plug-in qZI/qDI estimates from a data column");
  std::string method = "closed_form";
  add_common(index, common, true, true);
  add_data(index, data, true);
  index->add_option("--method", method, "closed_form or quadrature")->default_str("closed_form");

  auto* curve = app.add_subcommand("curve", "Tabulate a curve on a uniform interior grid");
  std::string curve_dist, curve_group;
  std::size_t grid_size = 199;
  add_common(curve, common, true, true);
  add_data(curve, data, false);
  curve->add_option("--dist", curve_dist, "Parametric source, e.g. dagum:sigma=1,a=2,b=1");
  curve->add_option("--group", curve_group, "Group to tabulate (default All)");
  curve->add_option("--grid", grid_size, "Number of midpoint grid points")->default_str("199");

  auto* exact = app.add_subcommand("exact", "Exact indices of a parametric distribution");
  std::vector<std::string> exact_dists;
  add_common(exact, common, false, true);
  exact->add_option("--dist", exact_dists, "Distribution (repeatable)")->required();

  auto* variance = app.add_subcommand("variance", "Asymptotic variances sigma2_Z and sigma2_D");
  SweepOptions sweep;
  add_common(variance, common, false, true);
  variance->add_option("--dist", sweep.dist, "Distribution");
  variance->add_option("--a-sweep", sweep.a_sweep, "Dagum shape a grid from:to:step");
  variance->add_option("--b", sweep.b, "Dagum b for --a-sweep")->default_str("1");
  variance->add_option("--sigma", sweep.sigma, "Dagum sigma for --a-sweep")->default_str("1");
  variance->add_option("--threads", common.threads, "OpenMP threads (1 = serial)");

  auto* simulate = app.add_subcommand("simulate", "Run Monte Carlo experiments from a config file");
  SimulateOptions sim;
  std::uint64_t seed = 0;
  add_common(simulate, common, true, true);
  simulate->add_option("--config", sim.config, "Experiment config file")->required();
  auto* seed_opt = simulate->add_option("--seed", seed, "Master seed (overrides the config)");
  simulate->add_option("--experiment", sim.experiments, "Run only this section (repeatable)");
  simulate->add_option("--replications", sim.replications, "Override the replication count");
  simulate->add_option("--threads", common.threads, "OpenMP threads (0 = default)");
  simulate->add_flag("--serial", sim.serial, "Use the serial reference loop");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (common.threads < 0) throw InvalidArgument("--threads must be non-negative");
    if (*index) return cmd_index(common, data, method, out);
    if (*curve) return cmd_curve(common, data, curve_dist, curve_group, grid_size, out);
    if (*exact) return cmd_exact(common, exact_dists, out);
    if (*variance) return cmd_variance(common, sweep, out);
    if (*simulate) {
      if (seed_opt->count() > 0) sim.seed = seed;
      return cmd_simulate(common, sim, out);
    }
  } catch (const NumericalError& e) {
    err << "qineq: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const InvalidArgument& e) {
    err << "qineq: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "qineq: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace qineq
