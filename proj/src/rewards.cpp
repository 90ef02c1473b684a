#include "congestion/rewards.hpp"

#include <limits>

namespace congestion {

std::string to_string(SchemeTag tag) {
  switch (tag) {
    case SchemeTag::Local: return "L";
    case SchemeTag::Global: return "G";
    case SchemeTag::Difference: return "D";
    case SchemeTag::Abstract: return "A";
  }
  throw std::logic_error("invalid scheme tag");
}

SchemeTag scheme_tag_from_string(const std::string& name) {
  if (name == "L" || name == "local") return SchemeTag::Local;
  if (name == "G" || name == "global") return SchemeTag::Global;
  if (name == "D" || name == "difference") return SchemeTag::Difference;
  if (name == "A" || name == "abstract") return SchemeTag::Abstract;
  throw ConfigError("unknown reward scheme '" + name + "' (expected L, G, D or A)");
}

RewardScheme RewardScheme::local() { return {SchemeTag::Local, std::nullopt}; }
RewardScheme RewardScheme::global() { return {SchemeTag::Global, std::nullopt}; }
RewardScheme RewardScheme::difference() { return {SchemeTag::Difference, std::nullopt}; }

RewardScheme RewardScheme::abstract_over(AbstractionSpec spec) {
  return {SchemeTag::Abstract, std::move(spec)};
}

std::string RewardScheme::label() const {
  return tag == SchemeTag::Abstract && abstraction ? abstraction->label()
                                                   : to_string(tag);
}

void RewardScheme::validate() const {
  if (tag == SchemeTag::Abstract && !abstraction) {
    throw ConfigError("reward scheme A requires an abstraction");
  }
  if (tag != SchemeTag::Abstract && abstraction) {
    throw ConfigError("abstraction given but reward scheme is " + to_string(tag));
  }
}

double local_reward(DomainKind kind, std::span<const Resource> resources,
                    std::span<const int> attendance, int resource) {
  const auto s = static_cast<std::size_t>(resource);
  return resource_reward(kind, resources[s].weight, resources[s].capacity,
                         attendance[s]);
}

double global_reward(DomainKind kind, std::span<const Resource> resources,
                     std::span<const int> attendance) {
  double sum = 0.0;
  for (std::size_t s = 0; s < resources.size(); ++s) {
    sum += resource_reward(kind, resources[s].weight, resources[s].capacity,
                           attendance[s]);
  }
  return sum;
}

double difference_reward(DomainKind kind, std::span<const Resource> resources,
                         std::span<const int> attendance, int resource) {
  const auto s = static_cast<std::size_t>(resource);
  if (attendance[s] < 1) {
    throw std::logic_error("difference reward on resource " +
                           std::to_string(resource) + " with no agent present");
  }
  const double with_agent = resource_reward(kind, resources[s].weight,
                                            resources[s].capacity, attendance[s]);
  const double without_agent = resource_reward(
      kind, resources[s].weight, resources[s].capacity, attendance[s] - 1);
  return with_agent - without_agent;
}

double group_signal(DomainKind kind, const AbstractionSpec& spec, int group,
                    std::span<const Resource> resources,
                    std::span<const int> attendance) {
  const GroupStats stats = group_stats(spec, group, resources, attendance);
  return -resource_reward(kind, stats.weight, stats.capacity, stats.attendance);
}

double abstract_reward(DomainKind kind, const AbstractionSpec& spec,
                       std::span<const Resource> resources,
                       std::span<const int> attendance, int resource) {
  const auto s = static_cast<std::size_t>(resource);
  if (!is_congested(resources[s].capacity, attendance[s])) {
    return local_reward(kind, resources, attendance, resource);
  }
  return group_signal(kind, spec, spec.group_of(resource), resources, attendance);
}

double agent_reward(const RewardScheme& scheme, DomainKind kind,
                    std::span<const Resource> resources,
                    std::span<const int> attendance, int agent_position) {
  switch (scheme.tag) {
    case SchemeTag::Local:
      return local_reward(kind, resources, attendance, agent_position);
    case SchemeTag::Global:
      return global_reward(kind, resources, attendance);
    case SchemeTag::Difference:
      return difference_reward(kind, resources, attendance, agent_position);
    case SchemeTag::Abstract:
      scheme.validate();
      return abstract_reward(kind, *scheme.abstraction, resources, attendance,
                             agent_position);
  }
  throw std::logic_error("invalid scheme tag");
}

void per_resource_rewards(const RewardScheme& scheme, DomainKind kind,
                          std::span<const Resource> resources,
                          std::span<const int> attendance,
                          std::vector<double>& out) {
  const std::size_t num_resources = resources.size();
  out.resize(num_resources);
  switch (scheme.tag) {
    case SchemeTag::Local:
      for (std::size_t s = 0; s < num_resources; ++s) {
        out[s] = resource_reward(kind, resources[s].weight, resources[s].capacity,
                                 attendance[s]);
      }
      return;
    case SchemeTag::Global: {
      const double g = global_reward(kind, resources, attendance);
      std::fill(out.begin(), out.end(), g);
      return;
    }
    case SchemeTag::Difference:
      for (std::size_t s = 0; s < num_resources; ++s) {
        out[s] = attendance[s] >= 1
                     ? difference_reward(kind, resources, attendance,
                                         static_cast<int>(s))
                     : std::numeric_limits<double>::quiet_NaN();
      }
      return;
    case SchemeTag::Abstract: {
      scheme.validate();
      const AbstractionSpec& spec = *scheme.abstraction;
      // Group signals are shared by every congested member; compute each once.
      thread_local std::vector<double> signals;
      signals.assign(static_cast<std::size_t>(spec.num_groups()), 0.0);
      for (int group = 0; group < spec.num_groups(); ++group) {
        signals[static_cast<std::size_t>(group)] =
            group_signal(kind, spec, group, resources, attendance);
      }
      for (std::size_t s = 0; s < num_resources; ++s) {
        out[s] = is_congested(resources[s].capacity, attendance[s])
                     ? signals[static_cast<std::size_t>(spec.group_of(
                           static_cast<int>(s)))]
                     : resource_reward(kind, resources[s].weight,
                                       resources[s].capacity, attendance[s]);
      }
      return;
    }
  }
  throw std::logic_error("invalid scheme tag");
}

}  // namespace congestion
