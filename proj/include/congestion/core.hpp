#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace congestion {

// Invalid user-supplied configuration (config files, CLI flags, spec strings).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// The two built-in benchmark families. Beach sections want attendance equal to
// their capacity; traffic lanes only care about staying decongested.
enum class DomainKind { Beach, Traffic };

std::string to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& name);

// One congestible resource. Attendance is per-timestep state and lives in
// WorldState, not here.
struct Resource {
  double weight = 1.0;  // importance, >= 0; beach scenarios use 1 everywhere
  int capacity = 1;     // attendance above this counts as congested, >= 1
};

// Mutable per-run state. `attendance` is kept redundantly alongside
// `agent_positions` and recomputed after every joint move.
struct WorldState {
  std::vector<int> attendance;       // one count per resource
  std::vector<int> agent_positions;  // one resource index per agent
  int timestep = 0;
  int episode = 0;
};

// Value of a single resource given its parameters and current attendance.
// Beach: x * exp(-x/capacity), maximized at x == capacity; weight is ignored.
// Traffic: weight * exp(-1) while decongested, weight * exp(-x/capacity) once
// congested. Total over attendance >= 0, capacity >= 1.
double resource_reward(DomainKind kind, double weight, int capacity, int attendance);

// Strict comparison: attendance == capacity is not congested.
bool is_congested(int capacity, int attendance);

// Histogram of agent positions. Throws std::logic_error on an out-of-range
// position, which can only mean corrupted state.
std::vector<int> recompute_attendance(std::span<const int> positions, int num_resources);
void recompute_attendance(std::span<const int> positions, std::vector<int>& attendance);

bool attendance_consistent(const WorldState& state);

}  // namespace congestion
