#include "congestion/cli.hpp"

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "congestion/config.hpp"

namespace congestion {

namespace {

struct RunFlags {
  std::string config_path;
  std::string domain;
  std::string reward;
  std::string abstraction;
  std::string abstraction_explicit;
  int agents = 0;
  int sections = 0;
  int capacity = 0;
  std::vector<int> capacities;
  std::vector<double> weights;
  int timesteps = 0;
  int episodes = 0;
  int runs = 0;
  std::uint64_t seed = 0;
  double noncompliant = 0.0;
  int accident_episode = 0;
  std::vector<int> accident_capacities;
  std::vector<double> accident_weights;
  bool accident_reset_epsilon = false;
  std::string out;
  int threads = -1;
};

// Command-line values win over the config file. Resource geometry flags are
// resolved together so e.g. `--sections 9 --capacity 334` rebuilds the lanes.
void apply_overrides(const CLI::App& cmd, const RunFlags& flags, ExperimentConfig& config) {
  DomainConfig& domain = config.domain;
  if (cmd.count("--domain")) domain.kind = domain_kind_from_string(flags.domain);

  const bool sections_set = cmd.count("--sections") > 0;
  const bool capacity_set = cmd.count("--capacity") > 0;
  const bool capacities_set = cmd.count("--capacities") > 0;
  const bool weights_set = cmd.count("--weights") > 0;
  if (sections_set || capacity_set || capacities_set || weights_set) {
    int count = static_cast<int>(domain.resources.size());
    if (sections_set) {
      count = flags.sections;
    } else if (capacities_set) {
      count = static_cast<int>(flags.capacities.size());
    } else if (weights_set) {
      count = static_cast<int>(flags.weights.size());
    }
    if (count < 1) throw ConfigError("--sections must be >= 1");

    std::vector<int> capacities;
    if (capacities_set) {
      if (static_cast<int>(flags.capacities.size()) != count) {
        throw ConfigError("--capacities lists " +
                          std::to_string(flags.capacities.size()) +
                          " values but there are " + std::to_string(count) +
                          " sections");
      }
      capacities = flags.capacities;
    } else if (capacity_set) {
      capacities.assign(static_cast<std::size_t>(count), flags.capacity);
    } else if (count == static_cast<int>(domain.resources.size())) {
      for (const Resource& resource : domain.resources) {
        capacities.push_back(resource.capacity);
      }
    } else {
      throw ConfigError("changing --sections needs --capacity or --capacities");
    }

    std::vector<double> weights;
    if (weights_set) {
      if (static_cast<int>(flags.weights.size()) != count) {
        throw ConfigError("--weights lists " + std::to_string(flags.weights.size()) +
                          " values but there are " + std::to_string(count) +
                          " sections");
      }
      weights = flags.weights;
    } else if (count == static_cast<int>(domain.resources.size())) {
      for (const Resource& resource : domain.resources) {
        weights.push_back(resource.weight);
      }
    } else {
      weights.assign(static_cast<std::size_t>(count), 1.0);
    }

    domain.resources.clear();
    for (int s = 0; s < count; ++s) {
      domain.resources.push_back(Resource{weights[static_cast<std::size_t>(s)],
                                          capacities[static_cast<std::size_t>(s)]});
    }
  }

  if (cmd.count("--reward")) {
    const SchemeTag tag = scheme_tag_from_string(flags.reward);
    if (tag == SchemeTag::Abstract) {
      domain.scheme.tag = tag;  // keep a file-supplied abstraction if any
    } else {
      domain.scheme = RewardScheme{tag, std::nullopt};
    }
  }
  if (cmd.count("--abstraction")) {
    domain.scheme.abstraction =
        AbstractionSpec::parse_contiguous(flags.abstraction, domain.num_resources());
  }
  if (cmd.count("--abstraction-explicit")) {
    domain.scheme.abstraction = AbstractionSpec::parse_explicit(
        flags.abstraction_explicit, domain.num_resources());
  }

  if (cmd.count("--agents")) domain.num_agents = flags.agents;
  if (cmd.count("--timesteps")) domain.num_timesteps = flags.timesteps;
  if (cmd.count("--episodes")) domain.num_episodes = flags.episodes;
  if (cmd.count("--noncompliant")) domain.noncompliant_fraction = flags.noncompliant;

  if (cmd.count("--accident-episode")) {
    ScheduledEvent event;
    event.episode = flags.accident_episode;
    if (cmd.count("--accident-capacities")) {
      event.new_capacities = flags.accident_capacities;
    }
    if (cmd.count("--accident-weights")) event.new_weights = flags.accident_weights;
    event.reset_epsilon = flags.accident_reset_epsilon;
    domain.events = {event};
  }

  if (cmd.count("--runs")) config.num_runs = flags.runs;
  if (cmd.count("--seed")) config.base_seed = flags.seed;
  if (cmd.count("--out")) config.output_path = flags.out;
  if (flags.threads >= 0) config.num_threads = flags.threads;
}

void add_run_options(CLI::App& cmd, RunFlags& flags) {
  cmd.add_option("--config", flags.config_path, "experiment config file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd.add_option("--domain", flags.domain, "domain kind: bpd or tld");
  cmd.add_option("--reward", flags.reward, "reward scheme: L, G, D or A");
  auto* abstraction = cmd.add_option(
      "--abstraction", flags.abstraction,
      "contiguous abstraction, group sizes joined by '+', e.g. 2+1+3");
  auto* abstraction_explicit =
      cmd.add_option("--abstraction-explicit", flags.abstraction_explicit,
                     "explicit abstraction, e.g. 0,3,6;1,4,7;2,5,8");
  abstraction->excludes(abstraction_explicit);
  abstraction_explicit->excludes(abstraction);
  cmd.add_option("--agents", flags.agents, "number of agents");
  cmd.add_option("--sections", flags.sections, "number of resources");
  auto* capacity =
      cmd.add_option("--capacity", flags.capacity, "uniform resource capacity");
  auto* capacities = cmd.add_option("--capacities", flags.capacities,
                                    "per-resource capacities, comma separated")
                         ->delimiter(',');
  capacity->excludes(capacities);
  capacities->excludes(capacity);
  cmd.add_option("--weights", flags.weights, "per-resource weights, comma separated")
      ->delimiter(',');
  cmd.add_option("--timesteps", flags.timesteps, "timesteps per episode");
  cmd.add_option("--episodes", flags.episodes, "episodes per run");
  cmd.add_option("--runs", flags.runs, "independent runs to average");
  cmd.add_option("--seed", flags.seed, "base seed; run seeds derive from it");
  cmd.add_option("--noncompliant", flags.noncompliant,
                 "fraction of agents that never move or learn");
  auto* accident_episode =
      cmd.add_option("--accident-episode", flags.accident_episode,
                     "episode at which the scenario changes");
  cmd.add_option("--accident-capacities", flags.accident_capacities,
                 "capacities after the change, comma separated")
      ->delimiter(',')
      ->needs(accident_episode);
  cmd.add_option("--accident-weights", flags.accident_weights,
                 "weights after the change, comma separated")
      ->delimiter(',')
      ->needs(accident_episode);
  cmd.add_flag("--accident-reset-epsilon", flags.accident_reset_epsilon,
               "restart exploration when the change fires")
      ->needs(accident_episode);
  cmd.add_option("--out", flags.out, "learning-curve CSV path");
  cmd.add_option("--threads", flags.threads, "worker threads (0 = all cores)");
}

int do_run(const CLI::App& cmd, const RunFlags& flags) {
  ExperimentConfig config = load_experiment_file(flags.config_path);
  apply_overrides(cmd, flags, config);
  config.validate();
  const LearningCurve curve = run_experiment(config);
  if (!config.output_path.empty()) {
    write_csv(curve, config.output_path);
    std::cout << "wrote " << config.output_path << '\n';
  }
  std::cout << config.domain.scheme.label() << " " << to_string(config.domain.kind)
            << " agents=" << config.domain.num_agents
            << " runs=" << curve.num_runs << " episodes=" << curve.num_episodes()
            << " final_mean_G=" << curve.mean_g.back()
            << " converged_mean_G=" << converged_performance(curve) << '\n';
  return 0;
}

int do_sweep(const std::string& config_path, const std::string& out_dir, int threads) {
  std::vector<SweepEntry> entries = load_sweep_file(config_path);
  if (threads >= 0) {
    for (SweepEntry& entry : entries) entry.config.num_threads = threads;
  }
  const std::vector<LearningCurve> curves = run_sweep(entries, out_dir);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::cout << entries[i].label
              << " converged_mean_G=" << converged_performance(curves[i]) << '\n';
  }
  std::cout << "wrote " << entries.size() << " curves and summary.csv to " << out_dir
            << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"congestion-game simulator: independent Q-learners on shared resources"};
  app.require_subcommand(1);

  RunFlags flags;
  CLI::App* run = app.add_subcommand("run", "run one experiment, write its learning curve");
  add_run_options(*run, flags);

  std::string sweep_config;
  std::string sweep_out_dir;
  int sweep_threads = -1;
  CLI::App* sweep =
      app.add_subcommand("sweep", "run a labelled set of experiments and a summary");
  sweep->add_option("--config", sweep_config, "sweep config file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out-dir", sweep_out_dir, "directory for per-label CSVs")
      ->required();
  sweep->add_option("--threads", sweep_threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return do_run(*run, flags);
    return do_sweep(sweep_config, sweep_out_dir, sweep_threads);
  } catch (const CLI::ParseError& error) {
    return app.exit(error) == 0 ? 0 : 1;  // help/usage exits keep 0
  } catch (const ConfigError& error) {
    std::cerr << "config error: " << error.what() << '\n';
    return 1;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 2;
  }
}

}  // namespace congestion
