#include "congestion/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace congestion {

namespace {
const double kInvE = std::exp(-1.0);
}  // namespace

std::string to_string(DomainKind kind) {
  return kind == DomainKind::Beach ? "bpd" : "tld";
}

DomainKind domain_kind_from_string(const std::string& name) {
  std::string low(name);
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (low == "bpd" || low == "beach") return DomainKind::Beach;
  if (low == "tld" || low == "traffic") return DomainKind::Traffic;
  throw ConfigError("unknown domain '" + name + "' (expected bpd or tld)");
}

double resource_reward(DomainKind kind, double weight, int capacity, int attendance) {
  const double x = attendance;
  if (kind == DomainKind::Beach) return x * std::exp(-x / capacity);
  return attendance <= capacity ? weight * kInvE : weight * std::exp(-x / capacity);
}

bool is_congested(int capacity, int attendance) { return attendance > capacity; }

void recompute_attendance(std::span<const int> positions, std::vector<int>& attendance) {
  std::fill(attendance.begin(), attendance.end(), 0);
  const int num_resources = static_cast<int>(attendance.size());
  for (int pos : positions) {
    if (pos < 0 || pos >= num_resources) {
      throw std::logic_error("agent position " + std::to_string(pos) +
                             " outside resource range [0, " +
                             std::to_string(num_resources) + ")");
    }
    ++attendance[pos];
  }
}

std::vector<int> recompute_attendance(std::span<const int> positions, int num_resources) {
  std::vector<int> attendance(static_cast<std::size_t>(num_resources), 0);
  recompute_attendance(positions, attendance);
  return attendance;
}

bool attendance_consistent(const WorldState& state) {
  return recompute_attendance(state.agent_positions,
                              static_cast<int>(state.attendance.size())) ==
         state.attendance;
}

}  // namespace congestion
