#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "congestion/harness.hpp"
#include "doctest.h"

using namespace congestion;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_experiment() {
  ExperimentConfig config;
  config.domain.kind = DomainKind::Beach;
  config.domain.resources.assign(3, Resource{1.0, 2});
  config.domain.num_agents = 12;
  config.domain.num_timesteps = 2;
  config.domain.num_episodes = 40;
  config.domain.scheme = RewardScheme::difference();
  config.num_runs = 4;
  config.base_seed = 99;
  return config;
}

fs::path fresh_dir(const std::string& tag) {
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  fs::path dir = fs::temp_directory_path() /
                 ("congestion_" + tag + "_" + std::to_string(stamp));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("run seeds derive from the splitmix stream") {
  CHECK(derive_run_seed(0, 0) == 16294208416658607535ull);
  CHECK(derive_run_seed(0, 1) == 7960286522194355700ull);
  std::vector<std::uint64_t> seen;
  for (int run = 0; run < 100; ++run) {
    const std::uint64_t seed = derive_run_seed(12345, run);
    for (std::uint64_t other : seen) CHECK(seed != other);
    seen.push_back(seed);
  }
  CHECK(derive_run_seed(12345, 0) != derive_run_seed(12346, 0));
}

TEST_CASE("aggregation computes mean and standard error") {
  const std::vector<std::vector<double>> per_run{{1.0, 2.0}, {3.0, 4.0}};
  const LearningCurve curve = aggregate_runs(per_run, RecordMode::FinalTimestepG, 1);
  REQUIRE(curve.num_rows() == 2);
  CHECK(curve.mean_g[0] == 2.0);
  CHECK(curve.mean_g[1] == 3.0);
  // Sample sd of {1,3} is sqrt(2); stderr = sqrt(2)/sqrt(2) = 1.
  CHECK(curve.stderr_g[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(curve.stderr_g[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(curve.num_runs == 2);

  const LearningCurve single =
      aggregate_runs({{5.0, 6.0, 7.0}}, RecordMode::FinalTimestepG, 1);
  for (double se : single.stderr_g) CHECK(se == 0.0);

  CHECK_THROWS_AS(aggregate_runs({{1.0}, {1.0, 2.0}}, RecordMode::FinalTimestepG, 1),
                  std::logic_error);
  CHECK_THROWS_AS(aggregate_runs({}, RecordMode::FinalTimestepG, 1), ConfigError);
}

TEST_CASE("experiment execution is reproducible and order invariant") {
  ExperimentConfig config = tiny_experiment();
  config.num_threads = 1;
  const LearningCurve serial = run_experiment(config);
  REQUIRE(serial.num_rows() == 40);
  CHECK(serial.num_runs == 4);
  for (double se : serial.stderr_g) CHECK(se >= 0.0);

  const LearningCurve again = run_experiment(config);
  CHECK(serial.mean_g == again.mean_g);      // bitwise
  CHECK(serial.stderr_g == again.stderr_g);  // bitwise

  config.num_threads = 3;
  const LearningCurve threaded = run_experiment(config);
  CHECK(serial.mean_g == threaded.mean_g);
  CHECK(serial.stderr_g == threaded.stderr_g);

  config.num_threads = 1;
  config.base_seed = 100;
  const LearningCurve other_seed = run_experiment(config);
  CHECK(serial.mean_g != other_seed.mean_g);
}

TEST_CASE("single run produces zero standard error") {
  ExperimentConfig config = tiny_experiment();
  config.num_runs = 1;
  const LearningCurve curve = run_experiment(config);
  for (double se : curve.stderr_g) CHECK(se == 0.0);
}

TEST_CASE("full trace recording keeps every timestep") {
  ExperimentConfig config = tiny_experiment();
  config.record = RecordMode::FullTrace;
  const LearningCurve curve = run_experiment(config);
  CHECK(curve.num_rows() == 40 * 2);
  CHECK(curve.rows_per_episode() == 2);
  CHECK(curve.num_episodes() == 40);
}

TEST_CASE("converged performance averages the tail of the curve") {
  LearningCurve curve;
  curve.record = RecordMode::FinalTimestepG;
  curve.num_timesteps = 1;
  curve.num_runs = 1;
  for (int episode = 0; episode < 250; ++episode) {
    curve.mean_g.push_back(episode);
    curve.stderr_g.push_back(0.0);
  }
  // Mean of 150..249.
  CHECK(converged_performance(curve, 100) == doctest::Approx(199.5).epsilon(1e-12));
  // Window wider than the curve degrades to the full mean.
  CHECK(converged_performance(curve, 1000) == doctest::Approx(124.5).epsilon(1e-12));

  // In trace mode only each episode's final timestep contributes.
  LearningCurve trace;
  trace.record = RecordMode::FullTrace;
  trace.num_timesteps = 2;
  trace.num_runs = 1;
  for (int episode = 0; episode < 4; ++episode) {
    trace.mean_g.push_back(-100.0);           // mid-episode sample, ignored
    trace.mean_g.push_back(episode);          // final timestep
    trace.stderr_g.insert(trace.stderr_g.end(), {0.0, 0.0});
  }
  CHECK(converged_performance(trace, 2) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("csv format is stable") {
  LearningCurve curve;
  curve.record = RecordMode::FinalTimestepG;
  curve.num_timesteps = 1;
  curve.num_runs = 1;
  curve.mean_g = {5.0};
  curve.stderr_g = {0.0};
  const fs::path dir = fresh_dir("csv");
  const fs::path path = dir / "one.csv";
  write_csv(curve, path.string());
  CHECK(slurp(path) == "episode,mean_G,stderr_G\n0,5.0,0.0\n");

  // Values keep 12 significant digits.
  curve.mean_g = {11.036983480880457};
  curve.stderr_g = {0.00123456789012345};
  write_csv(curve, path.string());
  CHECK(slurp(path) == "episode,mean_G,stderr_G\n0,11.0369834809,0.00123456789012\n");

  // One header plus one row per episode.
  LearningCurve long_curve;
  long_curve.record = RecordMode::FinalTimestepG;
  long_curve.num_timesteps = 1;
  long_curve.num_runs = 1;
  long_curve.mean_g.assign(10000, 1.0);
  long_curve.stderr_g.assign(10000, 0.0);
  write_csv(long_curve, path.string());
  const std::string body = slurp(path);
  CHECK(std::count(body.begin(), body.end(), '\n') == 10001);
  CHECK(body.back() == '\n');

  CHECK_THROWS_AS(write_csv(curve, ""), std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("trace csv carries a timestep column") {
  LearningCurve curve;
  curve.record = RecordMode::FullTrace;
  curve.num_timesteps = 2;
  curve.num_runs = 1;
  curve.mean_g = {1.0, 2.0, 3.0, 4.0};
  curve.stderr_g = {0.0, 0.0, 0.0, 0.0};
  const fs::path dir = fresh_dir("trace_csv");
  const fs::path path = dir / "trace.csv";
  write_csv(curve, path.string());
  CHECK(slurp(path) ==
        "episode,timestep,mean_G,stderr_G\n"
        "0,0,1.0,0.0\n0,1,2.0,0.0\n1,0,3.0,0.0\n1,1,4.0,0.0\n");
  fs::remove_all(dir);
}

TEST_CASE("csv files reproduce byte for byte under a fixed seed") {
  const ExperimentConfig config = tiny_experiment();
  const fs::path dir = fresh_dir("repro");
  const fs::path first = dir / "a.csv";
  const fs::path second = dir / "b.csv";
  write_csv(run_experiment(config), first.string());
  write_csv(run_experiment(config), second.string());
  CHECK(slurp(first) == slurp(second));
  fs::remove_all(dir);
}

TEST_CASE("sweep writes per-label curves and a summary") {
  ExperimentConfig base = tiny_experiment();
  base.domain.num_episodes = 30;
  std::vector<SweepEntry> entries;
  entries.push_back({"D", base});
  base.domain.scheme =
      RewardScheme::abstract_over(AbstractionSpec::parse_contiguous("2+1", 3));
  entries.push_back({"A-2+1", base});

  const fs::path dir = fresh_dir("sweep");
  const std::vector<LearningCurve> curves = run_sweep(entries, (dir / "out").string());
  REQUIRE(curves.size() == 2);
  CHECK(fs::exists(dir / "out" / "D.csv"));
  CHECK(fs::exists(dir / "out" / "A-2+1.csv"));
  const std::string summary = slurp(dir / "out" / "summary.csv");
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 3);
  CHECK(summary.find("label,converged_mean_G\n") == 0);
  CHECK(summary.find("A-2+1,") != std::string::npos);

  // Single-entry sweep matches run_experiment + write_csv.
  const std::vector<LearningCurve> lone =
      run_sweep({entries[0]}, (dir / "lone").string());
  CHECK(lone[0].mean_g == run_experiment(entries[0].config).mean_g);

  CHECK_THROWS_AS(run_sweep({entries[0], entries[0]}, (dir / "dup").string()),
                  ConfigError);
  CHECK_THROWS_AS(run_sweep({}, (dir / "none").string()), ConfigError);
  fs::remove_all(dir);
}
