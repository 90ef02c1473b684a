#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "congestion/abstraction.hpp"
#include "congestion/core.hpp"

namespace congestion {

// The four learning signals agents can be trained on.
enum class SchemeTag { Local, Global, Difference, Abstract };

std::string to_string(SchemeTag tag);  // "L", "G", "D", "A"
SchemeTag scheme_tag_from_string(const std::string& name);

// Which reward each agent receives. An abstraction is carried if and only if
// the tag is Abstract.
struct RewardScheme {
  SchemeTag tag = SchemeTag::Global;
  std::optional<AbstractionSpec> abstraction;

  static RewardScheme local();
  static RewardScheme global();
  static RewardScheme difference();
  static RewardScheme abstract_over(AbstractionSpec spec);

  // Tag used in labels and output: "L", "G", "D", or the abstraction's label.
  std::string label() const;

  void validate() const;  // ConfigError if tag and abstraction disagree
};

// Reward of the single resource an agent occupies.
double local_reward(DomainKind kind, std::span<const Resource> resources,
                    std::span<const int> attendance, int resource);

// System-level reward: sum of resource rewards.
double global_reward(DomainKind kind, std::span<const Resource> resources,
                     std::span<const int> attendance);

// Marginal contribution of one agent on `resource`: local reward minus the
// value the resource would have with that agent removed. Requires attendance
// >= 1 there (std::logic_error otherwise: no agent exists to evaluate).
double difference_reward(DomainKind kind, std::span<const Resource> resources,
                         std::span<const int> attendance, int resource);

// Negated reward of the group treated as one large resource (mean weight,
// summed capacity, summed attendance). Negative by construction so that
// congesting a group is discouraged.
double group_signal(DomainKind kind, const AbstractionSpec& spec, int group,
                    std::span<const Resource> resources,
                    std::span<const int> attendance);

// Abstract scheme: agents on a decongested resource get its local reward;
// agents on a congested resource get the signal of the group containing it.
double abstract_reward(DomainKind kind, const AbstractionSpec& spec,
                       std::span<const Resource> resources,
                       std::span<const int> attendance, int resource);

// Reward for an agent standing on `agent_position` under the given scheme.
double agent_reward(const RewardScheme& scheme, DomainKind kind,
                    std::span<const Resource> resources,
                    std::span<const int> attendance, int agent_position);

// Per-resource fanout: out[s] is the reward every agent on s receives this
// timestep. Computed once per step and shared by all agents on the same
// resource. Difference entries for empty resources are quiet NaN; no agent
// stands there to read them.
void per_resource_rewards(const RewardScheme& scheme, DomainKind kind,
                          std::span<const Resource> resources,
                          std::span<const int> attendance,
                          std::vector<double>& out);

}  // namespace congestion
