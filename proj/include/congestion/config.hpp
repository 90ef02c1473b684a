#pragma once

#include <string>
#include <vector>

#include "congestion/harness.hpp"

namespace congestion {

// Parses one experiment from JSON text. The document mirrors
// ExperimentConfig; see README for the schema. Unknown keys are rejected so
// typos fail loudly. All violations raise ConfigError naming the field.
ExperimentConfig experiment_from_json_text(const std::string& text);
ExperimentConfig load_experiment_file(const std::string& path);

// Parses a sweep: {"defaults": {...}, "experiments": [{"label": ..., ...}]}.
// Every experiment is the defaults object deep-merged with its own entry.
std::vector<SweepEntry> sweep_from_json_text(const std::string& text);
std::vector<SweepEntry> load_sweep_file(const std::string& path);

}  // namespace congestion
