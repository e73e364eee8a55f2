#pragma once

#include <string>
#include <vector>

#include "gadi/bench/bench.hpp"

namespace gadi {

/// A named reproduction run. Each stage is a full-factorial RunConfig; the
/// stages run in order and their rows are concatenated.
struct Preset {
  std::string name;
  std::string description;
  std::vector<RunConfig> stages;
  /// Figure presets also emit residual histories.
  bool emits_series = false;
};

/// table1..table5 and fig1..fig7, all at tolerance 1e-5.
std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown name.
Preset make_preset(const std::string& name);

struct PresetOutput {
  std::vector<BenchmarkRow> rows;
  std::vector<ConvergenceSeries> series;
};

PresetOutput run_preset(const Preset& preset);

}  // namespace gadi
