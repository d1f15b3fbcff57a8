#include "qineq/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "qineq/error.hpp"
#include "qineq/format.hpp"

namespace qineq {

std::vector<std::string> split_delimited(const std::string& line, char delimiter) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw InvalidArgument("unterminated quoted field");
  return fields;
}

namespace {

std::size_t resolve(const std::string& wanted, const std::vector<std::string>& header,
                    const std::string& what) {
  if (!header.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (trim(header[i]) == trim(wanted)) return i;
  }
  std::size_t pos = 0;
  const auto t = trim(wanted);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), pos);
  if (ec != std::errc{} || ptr != t.data() + t.size() || pos == 0)
    throw InvalidArgument(what + " '" + wanted + "' not found in the header");
  return pos - 1;
}

}  // namespace

std::vector<DataGroup> read_groups(const DataColumnSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) throw InvalidArgument("cannot open data file " + spec.path);

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  if (spec.has_header) {
    if (!std::getline(in, line)) throw InvalidArgument(spec.path + ": empty file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    header = split_delimited(line, spec.delimiter);
  }
  const std::size_t value_col = resolve(spec.column, header, "column");
  std::optional<std::size_t> group_col;
  if (spec.group_by) group_col = resolve(*spec.group_by, header, "group column");
  if (!header.empty() && value_col >= header.size())
    throw InvalidArgument(spec.path + ": column position " + std::to_string(value_col + 1) +
                          " exceeds the " + std::to_string(header.size()) + " header fields");

  std::vector<std::string> labels;
  std::vector<std::vector<double>> grouped;
  std::vector<double> all;
  std::size_t skipped = 0;
  std::vector<std::size_t> skipped_by_group;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto where = spec.path + ":" + std::to_string(line_no) + ": ";
    std::vector<std::string> fields;
    try {
      fields = split_delimited(line, spec.delimiter);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(where + e.what());
    }
    const std::size_t need = std::max(value_col, group_col.value_or(0)) + 1;
    const bool short_row = fields.size() < need;

    std::optional<std::size_t> gi;
    if (group_col && !short_row) {
      const std::string label(trim(fields[*group_col]));
      auto it = std::find(labels.begin(), labels.end(), label);
      if (it == labels.end()) {
        labels.push_back(label);
        grouped.emplace_back();
        skipped_by_group.push_back(0);
        it = labels.end() - 1;
      }
      gi = static_cast<std::size_t>(it - labels.begin());
    }

    double value = 0.0;
    std::string problem;
    if (short_row) {
      problem = "row has " + std::to_string(fields.size()) + " fields, expected at least " +
                std::to_string(need);
    } else {
      try {
        value = parse_double(trim(fields[value_col]));
      } catch (const InvalidArgument&) {
        problem = "cannot parse '" + fields[value_col] + "' as a number";
      }
    }
    if (!problem.empty()) {
      if (!spec.skip_bad) throw InvalidArgument(where + problem);
      ++skipped;
      if (gi) ++skipped_by_group[*gi];
      continue;
    }
    if (value < 0.0) throw InvalidArgument(where + "negative observation " + fields[value_col]);
    all.push_back(value);
    if (gi) grouped[*gi].push_back(value);
  }
  if (in.bad()) throw InvalidArgument(spec.path + ": read error");

  auto make = [&](std::string name, std::vector<double> values, std::size_t skip) {
    const auto positive = std::count_if(values.begin(), values.end(), [](double v) { return v > 0; });
    if (positive < 2)
      throw InvalidArgument(spec.path + ": group '" + name + "' has fewer than two positive observations");
    return DataGroup{std::move(name), Sample(std::move(values)), skip};
  };
  std::vector<DataGroup> out;
  for (std::size_t g = 0; g < labels.size(); ++g)
    out.push_back(make(labels[g], std::move(grouped[g]), skipped_by_group[g]));
  out.push_back(make("All", std::move(all), skipped));
  return out;
}

}  // namespace qineq
