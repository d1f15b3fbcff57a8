#include "qineq/config.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <optional>

#include "qineq/error.hpp"
#include "qineq/format.hpp"

namespace qineq {

namespace {

struct Section {
  std::string name;
  std::size_t line = 0;
  std::map<std::string, std::pair<std::string, std::size_t>> entries;  // key -> (value, line)
};

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw InvalidArgument("expected a boolean, got '" + v + "'");
}

template <class T, class Parse>
std::vector<T> parse_list(const std::string& v, Parse parse) {
  std::vector<T> out;
  for (const auto& item : split(v, ',')) {
    const auto t = trim(item);
    if (t.empty()) throw InvalidArgument("empty list entry in '" + v + "'");
    out.push_back(parse(t));
  }
  return out;
}

ExperimentSpec build(const Section& defaults, const Section& section, const std::string& source) {
  ExperimentSpec spec;
  spec.config.name = section.name;
  std::optional<Distribution> dist;
  auto apply = [&](const Section& s) {
    for (const auto& [key, entry] : s.entries) {
      const auto& [value, line] = entry;
      try {
        if (key == "dist") {
          dist = parse_distribution(value);
        } else if (key == "sample_sizes") {
          spec.config.sample_sizes = parse_list<std::size_t>(
              value, [](std::string_view t) { return static_cast<std::size_t>(parse_unsigned(t)); });
        } else if (key == "schemes") {
          spec.config.schemes = parse_list<QuantileScheme>(value, parse_scheme);
        } else if (key == "kinds") {
          spec.config.kinds = parse_list<IndexKind>(value, parse_index_kind);
        } else if (key == "replications") {
          spec.config.replications = static_cast<std::size_t>(parse_unsigned(value));
        } else if (key == "seed") {
          spec.config.master_seed = parse_unsigned(value);
          spec.seed_given = true;
        } else if (key == "mise_grid") {
          spec.config.mise_grid = static_cast<std::size_t>(parse_unsigned(value));
        } else if (key == "keep_raw") {
          spec.config.keep_raw = parse_bool(value);
        } else {
          throw InvalidArgument("unknown key '" + key + "'");
        }
      } catch (const InvalidArgument& e) {
        throw InvalidArgument(source + ":" + std::to_string(line) + ": " + e.what());
      }
    }
  };
  apply(defaults);
  apply(section);
  if (!dist)
    throw InvalidArgument(source + ":" + std::to_string(section.line) + ": experiment '" +
                          section.name + "' has no dist");
  spec.config.dist = *dist;
  try {
    spec.config.validate();
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(source + ":" + std::to_string(section.line) + ": " + e.what());
  }
  return spec;
}

}  // namespace

std::vector<ExperimentSpec> parse_simulation_config(std::istream& in, const std::string& source) {
  Section defaults;
  std::vector<Section> sections;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    const auto where = source + ":" + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw InvalidArgument(where + "unterminated section header");
      std::string name(trim(line.substr(1, line.size() - 2)));
      if (name.empty()) throw InvalidArgument(where + "empty section name");
      for (const auto& s : sections)
        if (s.name == name) throw InvalidArgument(where + "duplicate section [" + name + "]");
      sections.push_back({name, line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw InvalidArgument(where + "expected key = value");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw InvalidArgument(where + "missing key");
    Section& target = sections.empty() ? defaults : sections.back();
    if (!target.entries.emplace(key, std::pair{value, line_no}).second)
      throw InvalidArgument(where + "duplicate key '" + key + "'");
  }
  if (in.bad()) throw InvalidArgument(source + ": read error");

  std::vector<ExperimentSpec> out;
  if (sections.empty()) {
    if (defaults.entries.empty()) throw InvalidArgument(source + ": no experiments");
    Section single{std::filesystem::path(source).stem().string(), 1, {}};
    if (single.name.empty()) single.name = "experiment";
    out.push_back(build(defaults, single, source));
    return out;
  }
  for (const auto& s : sections) out.push_back(build(defaults, s, source));
  return out;
}

std::vector<ExperimentSpec> load_simulation_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path.string());
  return parse_simulation_config(in, path.string());
}

}  // namespace qineq
