#pragma once

#include <span>
#include <string>
#include <vector>

#include "congestion/core.hpp"

namespace congestion {

// A partition of the resource indices {0..R-1} into disjoint, non-empty
// groups. Two textual forms are accepted:
//   contiguous  "4+2"          group sizes left to right
//   explicit    "0,3;1,2,4;5"  semicolon-separated member index lists
// Construction validates that every resource belongs to exactly one group;
// violations raise ConfigError naming the offending part or index.
class AbstractionSpec {
 public:
  static AbstractionSpec parse_contiguous(const std::string& text, int num_resources);
  static AbstractionSpec parse_explicit(const std::string& text, int num_resources);
  static AbstractionSpec from_groups(std::vector<std::vector<int>> groups,
                                     int num_resources, std::string label);

  const std::vector<std::vector<int>>& groups() const { return groups_; }
  const std::vector<int>& members(int group) const { return groups_[group]; }
  int group_of(int resource) const { return resource_group_[resource]; }
  int num_groups() const { return static_cast<int>(groups_.size()); }
  int num_resources() const { return static_cast<int>(resource_group_.size()); }

  // Human-readable tag, e.g. "A-4+2"; used in plot labels and sweep output.
  const std::string& label() const { return label_; }

  bool operator==(const AbstractionSpec& other) const {
    return groups_ == other.groups_;
  }

 private:
  AbstractionSpec() = default;

  std::vector<std::vector<int>> groups_;
  std::vector<int> resource_group_;  // resource index -> group index
  std::string label_;
};

// Aggregate view of one group: mean member weight, summed capacity, summed
// attendance.
struct GroupStats {
  double weight = 0.0;
  int capacity = 0;
  int attendance = 0;
};

GroupStats group_stats(const AbstractionSpec& spec, int group,
                       std::span<const Resource> resources,
                       std::span<const int> attendance);

}  // namespace congestion
