#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "congestion/environment.hpp"

namespace congestion {

// One experiment: the same scenario repeated over independently seeded runs.
struct ExperimentConfig {
  DomainConfig domain;
  int num_runs = 30;
  std::uint64_t base_seed = 0;
  std::string output_path;  // empty: caller decides what to do with the curve
  RecordMode record = RecordMode::FinalTimestepG;
  int num_threads = 0;  // 0: one worker per hardware thread, capped at num_runs

  void validate() const;
};

// Mean and standard error of the global reward across runs, one row per
// recorded point (per episode, or per timestep in FullTrace mode).
struct LearningCurve {
  std::vector<double> mean_g;
  std::vector<double> stderr_g;
  int num_runs = 0;
  RecordMode record = RecordMode::FinalTimestepG;
  int num_timesteps = 1;  // rows per episode when record == FullTrace

  int num_rows() const { return static_cast<int>(mean_g.size()); }
  int rows_per_episode() const {
    return record == RecordMode::FullTrace ? num_timesteps : 1;
  }
  int num_episodes() const { return num_rows() / rows_per_episode(); }
};

// Seed for run `run_index`, decorrelated from neighbouring base seeds.
std::uint64_t derive_run_seed(std::uint64_t base_seed, int run_index);

// Pointwise mean and standard error (sample sd over sqrt(n); zero when n == 1).
// All runs must have recorded the same number of points.
LearningCurve aggregate_runs(const std::vector<std::vector<double>>& per_run,
                             RecordMode record, int num_timesteps);

// Executes all runs (possibly on worker threads; results are aggregated in
// run order, so the curve is identical for any thread count) and aggregates.
LearningCurve run_experiment(const ExperimentConfig& config);

// Mean of the per-episode curve over the final `episodes` episodes; the
// scalar used to compare schemes after learning has converged.
double converged_performance(const LearningCurve& curve, int episodes = 100);

// CSV with header "episode,mean_G,stderr_G" (plus a timestep column in
// FullTrace mode), one row per recorded point, 12 significant digits.
// Throws std::runtime_error naming the path on I/O failure.
void write_csv(const LearningCurve& curve, const std::string& path);

struct SweepEntry {
  std::string label;
  ExperimentConfig config;
};

// Runs every entry, writing <out_dir>/<label>.csv per entry and a
// <out_dir>/summary.csv of converged performance per label. Labels must be
// unique. Returns the per-entry curves in entry order.
std::vector<LearningCurve> run_sweep(const std::vector<SweepEntry>& entries,
                                     const std::string& out_dir);

}  // namespace congestion
