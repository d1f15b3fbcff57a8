#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qineq/sample.hpp"

namespace qineq {

struct DataColumnSpec {
  std::string path;
  /// Header name, or a 1-based position.
  std::string column;
  char delimiter = ',';
  bool has_header = true;
  std::optional<std::string> group_by;
  /// Skip rows whose value does not parse instead of failing. Negative values
  /// are fatal regardless.
  bool skip_bad = false;
};

struct DataGroup {
  std::string name;
  Sample sample;
  std::size_t skipped_rows = 0;
};

/// Splits one delimited line; double quotes enclose fields and "" escapes a quote.
std::vector<std::string> split_delimited(const std::string& line, char delimiter);

/// Reads the column. With group_by, returns one group per distinct label in
/// order of first appearance followed by "All" (every row); otherwise a single
/// group "All". Errors name the file and line number. Every group needs at
/// least two positive observations.
std::vector<DataGroup> read_groups(const DataColumnSpec& spec);

}  // namespace qineq
