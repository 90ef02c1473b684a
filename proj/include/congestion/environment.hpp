#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "congestion/agents.hpp"
#include "congestion/rewards.hpp"

namespace congestion {

// Mid-experiment change to the scenario, e.g. an accident that cuts lane
// capacities. Fires at the start of the named episode (counting from 0).
// Optionally restarts exploration so agents can re-adapt.
struct ScheduledEvent {
  int episode = 1;
  std::optional<std::vector<int>> new_capacities;
  std::optional<std::vector<double>> new_weights;
  bool reset_epsilon = false;
};

// Complete description of one simulated scenario.
struct DomainConfig {
  DomainKind kind = DomainKind::Beach;
  std::vector<Resource> resources;
  int num_agents = 1;
  int num_timesteps = 1;
  int num_episodes = 1;
  RewardScheme scheme = RewardScheme::global();
  LearnerConfig learner;
  double noncompliant_fraction = 0.0;  // leading fraction of agents that never move
  std::vector<ScheduledEvent> events;

  int num_resources() const { return static_cast<int>(resources.size()); }
  void validate() const;  // ConfigError on any violation
};

// Per-timestep global reward of one episode.
struct EpisodeTrace {
  std::vector<double> global_reward;
  double final_g() const { return global_reward.back(); }
};

// Deterministic even split of agents over resources: every resource gets
// floor(agents/resources), the first agents % resources get one extra.
std::vector<int> initial_placement(int num_agents, int num_resources);

// Moves clamp at the ends of the line of resources.
int apply_move(int position, int action_delta, int num_resources);

// Number of leading agents frozen by the non-compliant fraction.
int noncompliant_count(double fraction, int num_agents);

// Applies capacity/weight replacements and the optional exploration reset.
void apply_event(const ScheduledEvent& event, DomainConfig& config, double& epsilon);

enum class RecordMode { FinalTimestepG, FullTrace };

// One seeded run: a population of independent Q-learners repeatedly playing
// the scenario. Episodes share Q-tables and schedules; positions reset to the
// initial placement between episodes.
class Simulation {
 public:
  Simulation(DomainConfig config, std::uint64_t seed);

  // One joint timestep: all compliant agents pick actions from the pre-move
  // state, moves commit simultaneously, rewards are computed on the post-move
  // attendance, every compliant agent does one Q backup, then the shared
  // schedules decay once.
  void step();

  // Applies events due this episode, runs num_timesteps steps, then resets
  // positions to the initial placement. Q-tables and schedules persist.
  EpisodeTrace run_episode();

  const WorldState& state() const { return state_; }
  const DomainConfig& config() const { return config_; }
  const std::vector<Agent>& agents() const { return agents_; }
  // Mutable access for seeding Q-tables in tests and tools.
  std::vector<Agent>& agents_mut() { return agents_; }
  double alpha() const { return alpha_; }
  double epsilon() const { return epsilon_; }

 private:
  void apply_due_events();

  DomainConfig config_;  // owned copy; scheduled events mutate resources
  std::vector<Agent> agents_;
  WorldState state_;
  double alpha_ = 0.0;
  double epsilon_ = 0.0;
  Rng rng_;
  std::vector<double> reward_buffer_;      // per-resource fanout, reused
  std::vector<int> previous_positions_;    // pre-move states, reused
  std::vector<int> actions_;               // chosen deltas, reused
};

// Runs all episodes of one seeded scenario. Returns the final-timestep global
// reward per episode, or every timestep's global reward in FullTrace mode.
std::vector<double> run_scenario(const DomainConfig& config, std::uint64_t seed,
                                 RecordMode mode = RecordMode::FinalTimestepG);

}  // namespace congestion
