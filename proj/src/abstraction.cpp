#include "congestion/abstraction.hpp"

#include <charconv>

namespace congestion {

namespace {

// Strict non-negative integer parse; ConfigError names the bad token.
int parse_index(const std::string& token, const char* what) {
  int value = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || token.empty()) {
    throw ConfigError(std::string("bad ") + what + " '" + token + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

AbstractionSpec AbstractionSpec::from_groups(std::vector<std::vector<int>> groups,
                                             int num_resources, std::string label) {
  if (num_resources < 1) {
    throw ConfigError("abstraction needs at least one resource");
  }
  if (groups.empty()) {
    throw ConfigError("abstraction '" + label + "' has no groups");
  }
  std::vector<int> owner(static_cast<std::size_t>(num_resources), -1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) {
      throw ConfigError("abstraction '" + label + "' group " + std::to_string(g) +
                        " is empty");
    }
    for (int resource : groups[g]) {
      if (resource < 0 || resource >= num_resources) {
        throw ConfigError("abstraction '" + label + "' names resource " +
                          std::to_string(resource) + ", valid range is [0, " +
                          std::to_string(num_resources) + ")");
      }
      if (owner[resource] != -1) {
        throw ConfigError("abstraction '" + label + "' assigns resource " +
                          std::to_string(resource) + " to more than one group");
      }
      owner[resource] = static_cast<int>(g);
    }
  }
  for (int resource = 0; resource < num_resources; ++resource) {
    if (owner[resource] == -1) {
      throw ConfigError("abstraction '" + label + "' leaves resource " +
                        std::to_string(resource) + " in no group");
    }
  }
  AbstractionSpec spec;
  spec.groups_ = std::move(groups);
  spec.resource_group_ = std::move(owner);
  spec.label_ = std::move(label);
  return spec;
}

AbstractionSpec AbstractionSpec::parse_contiguous(const std::string& text,
                                                  int num_resources) {
  std::vector<std::vector<int>> groups;
  int next = 0;
  for (const std::string& token : split(text, '+')) {
    const int size = parse_index(token, "abstraction group size");
    if (size < 1) {
      throw ConfigError("abstraction group size must be positive, got '" + token +
                        "' in '" + text + "'");
    }
    std::vector<int> members(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) members[static_cast<std::size_t>(i)] = next++;
    groups.push_back(std::move(members));
  }
  if (next != num_resources) {
    throw ConfigError("abstraction '" + text + "' covers " + std::to_string(next) +
                      " resources but the domain has " +
                      std::to_string(num_resources));
  }
  return from_groups(std::move(groups), num_resources, "A-" + text);
}

AbstractionSpec AbstractionSpec::parse_explicit(const std::string& text,
                                                int num_resources) {
  std::vector<std::vector<int>> groups;
  for (const std::string& group_text : split(text, ';')) {
    std::vector<int> members;
    for (const std::string& token : split(group_text, ',')) {
      members.push_back(parse_index(token, "abstraction resource index"));
    }
    groups.push_back(std::move(members));
  }
  return from_groups(std::move(groups), num_resources, "A-{" + text + "}");
}

GroupStats group_stats(const AbstractionSpec& spec, int group,
                       std::span<const Resource> resources,
                       std::span<const int> attendance) {
  if (group < 0 || group >= spec.num_groups()) {
    throw std::logic_error("group index " + std::to_string(group) +
                           " outside [0, " + std::to_string(spec.num_groups()) + ")");
  }
  GroupStats stats;
  double weight_sum = 0.0;
  for (int resource : spec.members(group)) {
    weight_sum += resources[static_cast<std::size_t>(resource)].weight;
    stats.capacity += resources[static_cast<std::size_t>(resource)].capacity;
    stats.attendance += attendance[static_cast<std::size_t>(resource)];
  }
  stats.weight = weight_sum / static_cast<double>(spec.members(group).size());
  return stats;
}

}  // namespace congestion
