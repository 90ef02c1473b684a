#include "congestion/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace congestion {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

void require_object(const json& value, const std::string& where) {
  if (!value.is_object()) fail(where + " must be a JSON object");
}

// Reject unknown keys so a typo cannot silently fall back to a default.
void check_keys(const json& object, std::initializer_list<const char*> known,
                const std::string& where) {
  for (const auto& item : object.items()) {
    bool found = false;
    for (const char* key : known) {
      if (item.key() == key) {
        found = true;
        break;
      }
    }
    if (!found) fail("unknown field '" + item.key() + "' in " + where);
  }
}

template <typename T>
T get_number(const json& object, const char* key, const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end()) fail(where + " is missing field '" + key + "'");
  if constexpr (std::is_floating_point_v<T>) {
    if (!it->is_number()) fail(where + "." + key + " must be a number");
  } else {
    if (!it->is_number_integer() && !it->is_number_unsigned()) {
      fail(where + "." + key + " must be an integer");
    }
  }
  return it->get<T>();
}

template <typename T>
T get_number_or(const json& object, const char* key, T fallback,
                const std::string& where) {
  return object.contains(key) ? get_number<T>(object, key, where) : fallback;
}

std::string get_string(const json& object, const char* key, const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end()) fail(where + " is missing field '" + key + "'");
  if (!it->is_string()) fail(where + "." + key + " must be a string");
  return it->get<std::string>();
}

std::vector<int> int_list(const json& value, const std::string& where) {
  if (!value.is_array()) fail(where + " must be an array of integers");
  std::vector<int> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_number_integer() && !item.is_number_unsigned()) {
      fail(where + " must contain only integers");
    }
    out.push_back(item.get<int>());
  }
  return out;
}

std::vector<double> double_list(const json& value, const std::string& where) {
  if (!value.is_array()) fail(where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_number()) fail(where + " must contain only numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

// resources accepts either a full per-resource array
//   [{"weight": 1.0, "capacity": 6}, ...]
// or a compact object
//   {"count": 6, "capacity": 6}                     uniform
//   {"capacities": [...], "weights": [...]}         per-resource lists
std::vector<Resource> resources_from_json(const json& value) {
  std::vector<Resource> resources;
  if (value.is_array()) {
    for (std::size_t s = 0; s < value.size(); ++s) {
      const std::string where = "resources[" + std::to_string(s) + "]";
      require_object(value[s], where);
      check_keys(value[s], {"weight", "capacity"}, where);
      Resource resource;
      resource.capacity = get_number<int>(value[s], "capacity", where);
      resource.weight = get_number_or<double>(value[s], "weight", 1.0, where);
      resources.push_back(resource);
    }
    return resources;
  }
  require_object(value, "resources");
  check_keys(value, {"count", "capacity", "capacities", "weight", "weights"},
             "resources");
  std::vector<int> capacities;
  if (value.contains("capacities")) {
    if (value.contains("capacity")) fail("resources has both capacity and capacities");
    capacities = int_list(value["capacities"], "resources.capacities");
  } else {
    const int count = get_number<int>(value, "count", "resources");
    if (count < 1) fail("resources.count must be >= 1");
    capacities.assign(static_cast<std::size_t>(count),
                      get_number<int>(value, "capacity", "resources"));
  }
  if (value.contains("count") && value.contains("capacities") &&
      value["count"].get<int>() != static_cast<int>(capacities.size())) {
    fail("resources.count disagrees with resources.capacities length");
  }
  std::vector<double> weights(capacities.size(), 1.0);
  if (value.contains("weights")) {
    if (value.contains("weight")) fail("resources has both weight and weights");
    weights = double_list(value["weights"], "resources.weights");
    if (weights.size() != capacities.size()) {
      fail("resources.weights length " + std::to_string(weights.size()) +
           " does not match " + std::to_string(capacities.size()) + " capacities");
    }
  } else if (value.contains("weight")) {
    weights.assign(capacities.size(),
                   get_number<double>(value, "weight", "resources"));
  }
  resources.reserve(capacities.size());
  for (std::size_t s = 0; s < capacities.size(); ++s) {
    resources.push_back(Resource{weights[s], capacities[s]});
  }
  return resources;
}

// abstraction accepts "2+1+3", {"contiguous": "2+1+3"} or
// {"explicit": "0,3;1,2,4,5"}.
AbstractionSpec abstraction_from_json(const json& value, int num_resources) {
  if (value.is_string()) {
    return AbstractionSpec::parse_contiguous(value.get<std::string>(), num_resources);
  }
  require_object(value, "abstraction");
  check_keys(value, {"contiguous", "explicit"}, "abstraction");
  if (value.contains("contiguous") == value.contains("explicit")) {
    fail("abstraction needs exactly one of 'contiguous' or 'explicit'");
  }
  if (value.contains("contiguous")) {
    return AbstractionSpec::parse_contiguous(
        get_string(value, "contiguous", "abstraction"), num_resources);
  }
  return AbstractionSpec::parse_explicit(get_string(value, "explicit", "abstraction"),
                                         num_resources);
}

LearnerConfig learner_from_json(const json& value) {
  require_object(value, "learner");
  check_keys(value, {"alpha0", "gamma", "epsilon0", "alpha_decay", "epsilon_decay"},
             "learner");
  LearnerConfig learner;
  learner.alpha0 = get_number_or<double>(value, "alpha0", learner.alpha0, "learner");
  learner.gamma = get_number_or<double>(value, "gamma", learner.gamma, "learner");
  learner.epsilon0 =
      get_number_or<double>(value, "epsilon0", learner.epsilon0, "learner");
  learner.alpha_decay =
      get_number_or<double>(value, "alpha_decay", learner.alpha_decay, "learner");
  learner.epsilon_decay = get_number_or<double>(value, "epsilon_decay",
                                                learner.epsilon_decay, "learner");
  return learner;
}

ScheduledEvent event_from_json(const json& value, std::size_t index) {
  const std::string where = "events[" + std::to_string(index) + "]";
  require_object(value, where);
  check_keys(value, {"episode", "new_capacities", "new_weights", "reset_epsilon"},
             where);
  ScheduledEvent event;
  event.episode = get_number<int>(value, "episode", where);
  if (value.contains("new_capacities")) {
    event.new_capacities = int_list(value["new_capacities"], where + ".new_capacities");
  }
  if (value.contains("new_weights")) {
    event.new_weights = double_list(value["new_weights"], where + ".new_weights");
  }
  if (value.contains("reset_epsilon")) {
    if (!value["reset_epsilon"].is_boolean()) {
      fail(where + ".reset_epsilon must be a boolean");
    }
    event.reset_epsilon = value["reset_epsilon"].get<bool>();
  }
  return event;
}

DomainConfig domain_from_json(const json& value) {
  require_object(value, "domain");
  check_keys(value,
             {"kind", "resources", "num_agents", "num_timesteps", "num_episodes",
              "reward_scheme", "abstraction", "learner", "noncompliant_fraction",
              "events"},
             "domain");
  DomainConfig domain;
  domain.kind = domain_kind_from_string(get_string(value, "kind", "domain"));
  if (!value.contains("resources")) fail("domain is missing field 'resources'");
  domain.resources = resources_from_json(value["resources"]);
  domain.num_agents = get_number<int>(value, "num_agents", "domain");
  domain.num_timesteps = get_number<int>(value, "num_timesteps", "domain");
  domain.num_episodes = get_number<int>(value, "num_episodes", "domain");

  const std::string tag_text =
      value.contains("reward_scheme") ? get_string(value, "reward_scheme", "domain") : "G";
  const SchemeTag tag = scheme_tag_from_string(tag_text);
  if (value.contains("abstraction")) {
    if (tag != SchemeTag::Abstract) {
      fail("domain.abstraction given but reward_scheme is '" + tag_text + "'");
    }
    domain.scheme = RewardScheme::abstract_over(
        abstraction_from_json(value["abstraction"], domain.num_resources()));
  } else {
    domain.scheme = RewardScheme{tag, std::nullopt};
  }

  if (value.contains("learner")) domain.learner = learner_from_json(value["learner"]);
  domain.noncompliant_fraction =
      get_number_or<double>(value, "noncompliant_fraction", 0.0, "domain");
  if (value.contains("events")) {
    if (!value["events"].is_array()) fail("domain.events must be an array");
    for (std::size_t e = 0; e < value["events"].size(); ++e) {
      domain.events.push_back(event_from_json(value["events"][e], e));
    }
  }
  return domain;
}

RecordMode record_from_string(const std::string& text) {
  if (text == "final_timestep_G") return RecordMode::FinalTimestepG;
  if (text == "full_trace") return RecordMode::FullTrace;
  throw ConfigError("unknown record mode '" + text +
                    "' (expected final_timestep_G or full_trace)");
}

ExperimentConfig experiment_from_json(const json& value) {
  require_object(value, "experiment");
  check_keys(value,
             {"domain", "num_runs", "base_seed", "output_path", "record",
              "num_threads"},
             "experiment");
  ExperimentConfig experiment;
  if (!value.contains("domain")) fail("experiment is missing field 'domain'");
  experiment.domain = domain_from_json(value["domain"]);
  experiment.num_runs = get_number_or<int>(value, "num_runs", 30, "experiment");
  experiment.base_seed =
      get_number_or<std::uint64_t>(value, "base_seed", 0, "experiment");
  if (value.contains("output_path")) {
    experiment.output_path = get_string(value, "output_path", "experiment");
  }
  if (value.contains("record")) {
    experiment.record = record_from_string(get_string(value, "record", "experiment"));
  }
  experiment.num_threads = get_number_or<int>(value, "num_threads", 0, "experiment");
  experiment.validate();
  return experiment;
}

json parse_text(const std::string& text, const std::string& what) {
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) fail(what + " is not valid JSON");
  return value;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

ExperimentConfig experiment_from_json_text(const std::string& text) {
  return experiment_from_json(parse_text(text, "config"));
}

ExperimentConfig load_experiment_file(const std::string& path) {
  return experiment_from_json_text(read_file(path));
}

std::vector<SweepEntry> sweep_from_json_text(const std::string& text) {
  const json root = parse_text(text, "sweep config");
  require_object(root, "sweep config");
  check_keys(root, {"defaults", "experiments"}, "sweep config");
  json defaults = json::object();
  if (root.contains("defaults")) {
    defaults = root["defaults"];
    require_object(defaults, "defaults");
  }
  if (!root.contains("experiments") || !root["experiments"].is_array() ||
      root["experiments"].empty()) {
    fail("sweep config needs a non-empty 'experiments' array");
  }
  std::vector<SweepEntry> entries;
  for (std::size_t i = 0; i < root["experiments"].size(); ++i) {
    json entry = root["experiments"][i];
    const std::string where = "experiments[" + std::to_string(i) + "]";
    require_object(entry, where);
    const std::string label = get_string(entry, "label", where);
    if (label.empty()) fail(where + ".label must not be empty");
    entry.erase("label");
    json merged = defaults;
    merged.merge_patch(entry);
    try {
      entries.push_back(SweepEntry{label, experiment_from_json(merged)});
    } catch (const ConfigError& error) {
      fail("experiment '" + label + "': " + error.what());
    }
  }
  return entries;
}

std::vector<SweepEntry> load_sweep_file(const std::string& path) {
  return sweep_from_json_text(read_file(path));
}

}  // namespace congestion
