#include "congestion/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

namespace congestion {

void ExperimentConfig::validate() const {
  domain.validate();
  if (num_runs < 1) throw ConfigError("num_runs must be >= 1");
  if (num_threads < 0) throw ConfigError("num_threads must be >= 0");
}

std::uint64_t derive_run_seed(std::uint64_t base_seed, int run_index) {
  // run_index steps along the SplitMix64 stream seeded at base_seed, so
  // consecutive base seeds still give unrelated runs.
  return splitmix64(base_seed +
                    static_cast<std::uint64_t>(run_index) * 0x9E3779B97F4A7C15ull);
}

LearningCurve aggregate_runs(const std::vector<std::vector<double>>& per_run,
                             RecordMode record, int num_timesteps) {
  if (per_run.empty()) throw ConfigError("aggregate_runs needs at least one run");
  const std::size_t rows = per_run[0].size();
  for (std::size_t r = 1; r < per_run.size(); ++r) {
    if (per_run[r].size() != rows) {
      throw std::logic_error("run " + std::to_string(r) + " recorded " +
                             std::to_string(per_run[r].size()) +
                             " points, expected " + std::to_string(rows));
    }
  }
  const auto n = static_cast<double>(per_run.size());
  LearningCurve curve;
  curve.num_runs = static_cast<int>(per_run.size());
  curve.record = record;
  curve.num_timesteps = num_timesteps;
  curve.mean_g.resize(rows);
  curve.stderr_g.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    double sum = 0.0;
    for (const auto& run : per_run) sum += run[i];
    const double mean = sum / n;
    double sq = 0.0;
    for (const auto& run : per_run) {
      const double d = run[i] - mean;
      sq += d * d;
    }
    curve.mean_g[i] = mean;
    // Standard error of the mean with the n-1 sample variance.
    curve.stderr_g[i] = per_run.size() > 1 ? std::sqrt(sq / (n - 1.0) / n) : 0.0;
  }
  return curve;
}

LearningCurve run_experiment(const ExperimentConfig& config) {
  config.validate();
  const int num_runs = config.num_runs;
  std::vector<std::vector<double>> per_run(static_cast<std::size_t>(num_runs));

  int workers = config.num_threads > 0
                    ? config.num_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, num_runs);

  if (workers == 1) {
    for (int run = 0; run < num_runs; ++run) {
      per_run[static_cast<std::size_t>(run)] = run_scenario(
          config.domain, derive_run_seed(config.base_seed, run), config.record);
    }
  } else {
    std::atomic<int> next_run{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      while (true) {
        const int run = next_run.fetch_add(1);
        if (run >= num_runs) return;
        try {
          per_run[static_cast<std::size_t>(run)] =
              run_scenario(config.domain, derive_run_seed(config.base_seed, run),
                           config.record);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) threads.emplace_back(worker);
    for (std::thread& thread : threads) thread.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  // Aggregation always walks runs in index order, so the curve does not
  // depend on which thread finished first.
  return aggregate_runs(per_run, config.record, config.domain.num_timesteps);
}

double converged_performance(const LearningCurve& curve, int episodes) {
  if (episodes < 1) throw ConfigError("converged_performance needs >= 1 episode");
  const int available = curve.num_episodes();
  const int window = std::min(episodes, available);
  const int stride = curve.rows_per_episode();
  // Average the final recorded point of each of the last `window` episodes.
  double sum = 0.0;
  for (int e = available - window; e < available; ++e) {
    sum += curve.mean_g[static_cast<std::size_t>((e + 1) * stride - 1)];
  }
  return sum / window;
}

namespace {

// 12 significant digits, with a trailing ".0" so integral values still read
// as reals ("5" -> "5.0").
std::string format_value(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  std::string text(buffer);
  if (text.find_first_of(".eEnN") == std::string::npos) text += ".0";
  return text;
}

}  // namespace

void write_csv(const LearningCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing: " +
                             std::strerror(errno));
  }
  const bool trace = curve.record == RecordMode::FullTrace;
  out << (trace ? "episode,timestep,mean_G,stderr_G" : "episode,mean_G,stderr_G")
      << '\n';
  const int stride = curve.rows_per_episode();
  for (int row = 0; row < curve.num_rows(); ++row) {
    out << row / stride << ',';
    if (trace) out << row % stride << ',';
    out << format_value(curve.mean_g[static_cast<std::size_t>(row)]) << ','
        << format_value(curve.stderr_g[static_cast<std::size_t>(row)]) << '\n';
  }
  out.flush();
  if (!out) {
    throw std::runtime_error("failed while writing '" + path + "'");
  }
}

namespace {

std::string sanitize_label(const std::string& label) {
  std::string name(label);
  for (char& c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-' ||
                    c == '+';
    if (!ok) c = '_';
  }
  return name;
}

}  // namespace

std::vector<LearningCurve> run_sweep(const std::vector<SweepEntry>& entries,
                                     const std::string& out_dir) {
  if (entries.empty()) throw ConfigError("sweep has no experiments");
  std::vector<std::string> files;
  files.reserve(entries.size());
  for (const SweepEntry& entry : entries) {
    if (entry.label.empty()) throw ConfigError("sweep entry without a label");
    const std::string file = sanitize_label(entry.label);
    if (std::find(files.begin(), files.end(), file) != files.end()) {
      throw ConfigError("duplicate sweep label '" + entry.label + "'");
    }
    files.push_back(file);
    entry.config.validate();
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + out_dir +
                             "': " + ec.message());
  }

  std::vector<LearningCurve> curves;
  curves.reserve(entries.size());
  std::ofstream summary(out_dir + "/summary.csv");
  if (!summary) {
    throw std::runtime_error("cannot open '" + out_dir + "/summary.csv' for writing");
  }
  summary << "label,converged_mean_G\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    curves.push_back(run_experiment(entries[i].config));
    write_csv(curves.back(), out_dir + "/" + files[i] + ".csv");
    summary << entries[i].label << ',' << format_value(converged_performance(curves.back()))
            << '\n';
  }
  summary.flush();
  if (!summary) {
    throw std::runtime_error("failed while writing '" + out_dir + "/summary.csv'");
  }
  return curves;
}

}  // namespace congestion
