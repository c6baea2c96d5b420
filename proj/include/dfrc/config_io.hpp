#pragma once

#include <string>

#include "dfrc/experiments.hpp"
#include "dfrc/power.hpp"

namespace dfrc {

struct ExperimentSpec {
  std::vector<double> rho_s_values = {0.0, 0.222, 0.740, 1.332};
  int n_runs = 100;
  int n_stages = 3;
  double increment = 0.10;
};

struct LoadedConfig {
  ScenarioSpec scenario;
  ExperimentSpec experiment;
  PowerModelParams power_model;
};

/// Baseline mmWave scenario: 10x10 co-located ULAs, 4 users, 4 targets,
/// 28 GHz band split between radar and users, 100 Mbps floors and 20 Gbps
/// ceilings converted to spectral-efficiency units.
LoadedConfig default_config();

/// Variant with a per-antenna reliability vector and the hybrid power
/// budget used for antenna selection.
LoadedConfig default_selection_config();

/// Loads a JSON scenario file. Unspecified keys fall back to the defaults
/// above; the mask may be inline (array of arrays or flat array) or a path
/// to a separate JSON file.
LoadedConfig load_config(const std::string& path);

}  // namespace dfrc
