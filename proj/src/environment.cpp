#include "congestion/environment.hpp"

#include <algorithm>
#include <cmath>

namespace congestion {

void DomainConfig::validate() const {
  if (resources.empty()) throw ConfigError("domain has no resources");
  for (std::size_t s = 0; s < resources.size(); ++s) {
    if (resources[s].capacity < 1) {
      throw ConfigError("resource " + std::to_string(s) + " capacity must be >= 1, got " +
                        std::to_string(resources[s].capacity));
    }
    if (!(resources[s].weight >= 0.0)) {
      throw ConfigError("resource " + std::to_string(s) + " weight must be >= 0");
    }
  }
  if (kind == DomainKind::Beach) {
    for (std::size_t s = 0; s < resources.size(); ++s) {
      if (resources[s].weight != 1.0) {
        throw ConfigError("beach sections all have weight 1; resource " +
                          std::to_string(s) + " has weight " +
                          std::to_string(resources[s].weight));
      }
      if (resources[s].capacity != resources[0].capacity) {
        throw ConfigError("beach sections share one capacity; resource " +
                          std::to_string(s) + " differs from resource 0");
      }
    }
  }
  if (num_agents < 1) throw ConfigError("num_agents must be >= 1");
  if (num_timesteps < 1) throw ConfigError("num_timesteps must be >= 1");
  if (num_episodes < 1) throw ConfigError("num_episodes must be >= 1");
  scheme.validate();
  if (scheme.abstraction &&
      scheme.abstraction->num_resources() != num_resources()) {
    throw ConfigError("abstraction covers " +
                      std::to_string(scheme.abstraction->num_resources()) +
                      " resources but the domain has " +
                      std::to_string(num_resources()));
  }
  const LearnerConfig& l = learner;
  if (!(l.alpha0 > 0.0 && l.alpha0 <= 1.0)) throw ConfigError("alpha0 must be in (0, 1]");
  if (!(l.gamma >= 0.0 && l.gamma <= 1.0)) throw ConfigError("gamma must be in [0, 1]");
  if (!(l.epsilon0 >= 0.0 && l.epsilon0 <= 1.0)) throw ConfigError("epsilon0 must be in [0, 1]");
  if (!(l.alpha_decay > 0.0 && l.alpha_decay <= 1.0)) throw ConfigError("alpha_decay must be in (0, 1]");
  if (!(l.epsilon_decay > 0.0 && l.epsilon_decay <= 1.0)) throw ConfigError("epsilon_decay must be in (0, 1]");
  if (!(noncompliant_fraction >= 0.0 && noncompliant_fraction <= 1.0)) {
    throw ConfigError("noncompliant_fraction must be in [0, 1]");
  }
  for (std::size_t e = 0; e < events.size(); ++e) {
    const ScheduledEvent& event = events[e];
    if (event.episode < 1) {
      throw ConfigError("event " + std::to_string(e) + " episode must be >= 1");
    }
    if (event.new_capacities &&
        event.new_capacities->size() != resources.size()) {
      throw ConfigError("event " + std::to_string(e) + " replaces " +
                        std::to_string(event.new_capacities->size()) +
                        " capacities but the domain has " +
                        std::to_string(resources.size()) + " resources");
    }
    if (event.new_capacities) {
      for (int capacity : *event.new_capacities) {
        if (capacity < 1) {
          throw ConfigError("event " + std::to_string(e) +
                            " capacity must be >= 1, got " + std::to_string(capacity));
        }
      }
    }
    if (event.new_weights && event.new_weights->size() != resources.size()) {
      throw ConfigError("event " + std::to_string(e) + " replaces " +
                        std::to_string(event.new_weights->size()) +
                        " weights but the domain has " +
                        std::to_string(resources.size()) + " resources");
    }
    if (event.new_weights) {
      for (double weight : *event.new_weights) {
        if (!(weight >= 0.0)) {
          throw ConfigError("event " + std::to_string(e) + " weight must be >= 0");
        }
      }
    }
  }
}

std::vector<int> initial_placement(int num_agents, int num_resources) {
  if (num_resources < 1) throw ConfigError("initial placement needs >= 1 resource");
  if (num_agents < 0) throw ConfigError("initial placement needs >= 0 agents");
  std::vector<int> positions(static_cast<std::size_t>(num_agents));
  const int base = num_agents / num_resources;
  const int extra = num_agents % num_resources;
  int agent = 0;
  for (int resource = 0; resource < num_resources; ++resource) {
    const int count = base + (resource < extra ? 1 : 0);
    for (int i = 0; i < count; ++i) positions[static_cast<std::size_t>(agent++)] = resource;
  }
  return positions;
}

int apply_move(int position, int action_delta, int num_resources) {
  return std::clamp(position + action_delta, 0, num_resources - 1);
}

int noncompliant_count(double fraction, int num_agents) {
  // ceil with a tolerance so that e.g. 0.1 * 100 lands on 10, not 11.
  return static_cast<int>(std::ceil(fraction * num_agents - 1e-9));
}

void apply_event(const ScheduledEvent& event, DomainConfig& config, double& epsilon) {
  if (event.new_capacities) {
    for (std::size_t s = 0; s < config.resources.size(); ++s) {
      config.resources[s].capacity = (*event.new_capacities)[s];
    }
  }
  if (event.new_weights) {
    for (std::size_t s = 0; s < config.resources.size(); ++s) {
      config.resources[s].weight = (*event.new_weights)[s];
    }
  }
  if (event.reset_epsilon) epsilon = config.learner.epsilon0;
}

Simulation::Simulation(DomainConfig config, std::uint64_t seed)
    : config_(std::move(config)), rng_(seed) {
  config_.validate();
  const int num_resources = config_.num_resources();
  const int num_agents = config_.num_agents;
  state_.agent_positions = initial_placement(num_agents, num_resources);
  state_.attendance = recompute_attendance(state_.agent_positions, num_resources);
  const int frozen = noncompliant_count(config_.noncompliant_fraction, num_agents);
  agents_.reserve(static_cast<std::size_t>(num_agents));
  for (int i = 0; i < num_agents; ++i) {
    const int position = state_.agent_positions[static_cast<std::size_t>(i)];
    agents_.push_back(Agent{QTable(num_resources), position, position, i >= frozen});
  }
  alpha_ = config_.learner.alpha0;
  epsilon_ = config_.learner.epsilon0;
  reward_buffer_.resize(static_cast<std::size_t>(num_resources));
  previous_positions_.resize(static_cast<std::size_t>(num_agents));
  actions_.resize(static_cast<std::size_t>(num_agents));
}

void Simulation::step() {
  const int num_resources = config_.num_resources();
  const std::size_t num_agents = agents_.size();

  // Everyone decides from the pre-move state, then all moves commit at once.
  for (std::size_t i = 0; i < num_agents; ++i) {
    Agent& agent = agents_[i];
    previous_positions_[i] = agent.position;
    actions_[i] = agent.compliant ? select_action(agent, epsilon_, rng_) : 0;
  }
  for (std::size_t i = 0; i < num_agents; ++i) {
    Agent& agent = agents_[i];
    agent.position = apply_move(agent.position, actions_[i], num_resources);
    state_.agent_positions[i] = agent.position;
  }
  recompute_attendance(state_.agent_positions, state_.attendance);

  per_resource_rewards(config_.scheme, config_.kind, config_.resources,
                       state_.attendance, reward_buffer_);
  for (std::size_t i = 0; i < num_agents; ++i) {
    Agent& agent = agents_[i];
    if (!agent.compliant) continue;
    const double reward = reward_buffer_[static_cast<std::size_t>(agent.position)];
    q_update(agent, previous_positions_[i], actions_[i], reward, agent.position,
             alpha_, config_.learner.gamma);
  }

  // One shared decay per environment timestep, not per agent update.
  std::tie(alpha_, epsilon_) = decay_schedules(alpha_, epsilon_, config_.learner);
  ++state_.timestep;
}

void Simulation::apply_due_events() {
  for (const ScheduledEvent& event : config_.events) {
    if (event.episode == state_.episode) {
      apply_event(event, config_, epsilon_);
    }
  }
}

EpisodeTrace Simulation::run_episode() {
  apply_due_events();
  EpisodeTrace trace;
  trace.global_reward.reserve(static_cast<std::size_t>(config_.num_timesteps));
  for (int t = 0; t < config_.num_timesteps; ++t) {
    step();
    trace.global_reward.push_back(
        global_reward(config_.kind, config_.resources, state_.attendance));
  }
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    agents_[i].position = agents_[i].initial_position;
    state_.agent_positions[i] = agents_[i].initial_position;
  }
  recompute_attendance(state_.agent_positions, state_.attendance);
  state_.timestep = 0;
  ++state_.episode;
  return trace;
}

std::vector<double> run_scenario(const DomainConfig& config, std::uint64_t seed,
                                 RecordMode mode) {
  Simulation sim(config, seed);
  std::vector<double> recorded;
  const std::size_t per_episode =
      mode == RecordMode::FullTrace ? static_cast<std::size_t>(config.num_timesteps) : 1;
  recorded.reserve(static_cast<std::size_t>(config.num_episodes) * per_episode);
  for (int episode = 0; episode < config.num_episodes; ++episode) {
    const EpisodeTrace trace = sim.run_episode();
    if (mode == RecordMode::FullTrace) {
      recorded.insert(recorded.end(), trace.global_reward.begin(),
                      trace.global_reward.end());
    } else {
      recorded.push_back(trace.final_g());
    }
  }
  return recorded;
}

}  // namespace congestion
