#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qineq/simulation.hpp"

namespace qineq {

struct ExperimentSpec {
  SimulationConfig config;
  /// False when neither the section nor the defaults set `seed`.
  bool seed_given = false;
};

/// Simulation config file:
///
///   # comment            ; comment
///   replications = 1000  <- keys before the first section are defaults
///   [name]
///   dist = dagum:sigma=1,a=2,b=1
///   sample_sizes = 50,100,500
///   schemes = E,H,WG,HF
///   kinds = qZI,qDI
///   seed = 42
///   mise_grid = 512
///   keep_raw = false
///
/// A file without sections describes one experiment named after the file.
/// Errors carry "source:line".
std::vector<ExperimentSpec> parse_simulation_config(std::istream& in, const std::string& source);
std::vector<ExperimentSpec> load_simulation_config(const std::filesystem::path& path);

}  // namespace qineq
