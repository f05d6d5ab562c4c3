#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "segnet/detection.hpp"
#include "segnet/energy.hpp"
#include "segnet/topology.hpp"
#include "segnet/types.hpp"

namespace segnet {

struct AttackerConfig {
  bool enabled = false;
  std::vector<NodeId> targets;
  std::int64_t rate_milli = 1000;  // forged coins per time unit per target, x1000
  SimTime window_start = 0;
  SimTime window_end = 0;
};

enum class CompromiseKind { None, ZoFalseFlag, MnSpuriousTickets, CoFlowFlood };

const char* to_string(CompromiseKind k);

struct CompromiseConfig {
  CompromiseKind kind = CompromiseKind::None;
  NodeId node = 0;
  SimTime start = 0;
  std::int64_t rate_milli = 1000;  // junk packets per time unit (flow flood only)
};

// Fully resolved run configuration: defaults applied, reals converted to
// fixed point, node categories settled against the base node's energy.
struct ScenarioConfig {
  std::string name = "scenario";
  std::vector<NodeSpec> nodes;
  double radio_range = 0.0;
  std::int64_t mu_milli = 2000;
  int k_mn = 6;
  int z_zo = 2;
  Thresholds thresholds;
  SleepSchedule duty;
  EnergyModel energy;
  AttackerConfig attacker;
  CompromiseConfig compromised;
  SimTime duration = 0;
  SimTime reconfigure_interval = 0;
  SimTime hop_latency = kTimeScale;
  SimTime discovery_timer = 2 * kTimeScale;
  std::vector<SimTime> query_phases;  // offsets into each duty period
  std::uint64_t seed = 0;
  bool detection_enabled = true;
  std::uint64_t config_digest = 0;
  std::vector<std::string> defaults_applied;
};

// Parses and validates scenario JSON. Throws ConfigError naming the offending
// field (and the line for syntax errors). seed_override substitutes for a
// missing or present sim.seed.
ScenarioConfig load_scenario(const std::string& text, const std::string& origin,
                             std::optional<std::uint64_t> seed_override = std::nullopt);
ScenarioConfig load_scenario_file(const std::string& path,
                                  std::optional<std::uint64_t> seed_override = std::nullopt);

// Parses scenario JSON text, mapping syntax errors to line-numbered
// ConfigError diagnostics. Used by callers that mutate the document (CLI
// flags, sweeps) before resolving, so the config digest reflects the
// effective run configuration.
nlohmann::json parse_scenario_json(const std::string& text, const std::string& origin);
nlohmann::json read_scenario_json(const std::string& path);

// Applies one "key=value" sweep override onto raw scenario JSON. Throws
// ConfigError listing the known keys when the key is not recognized.
void apply_override(nlohmann::json& raw, const std::string& key, const std::string& value);
std::vector<std::string> known_override_keys();

ScenarioConfig resolve_scenario(const nlohmann::json& raw, const std::string& origin,
                                std::optional<std::uint64_t> seed_override = std::nullopt);

std::uint64_t fnv1a64(const std::string& s);

}  // namespace segnet
