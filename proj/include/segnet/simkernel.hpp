#pragma once

#include <string>
#include <vector>

#include "segnet/energy.hpp"
#include "segnet/metrics.hpp"
#include "segnet/scenario.hpp"
#include "segnet/topology.hpp"
#include "segnet/trace.hpp"
#include "segnet/types.hpp"

namespace segnet {

struct RunResult {
  std::vector<TraceRecord> trace;
  Metrics metrics;
  Network net;
  EnergyLedger ledger;
  RoleAssignment roles;
  std::vector<EnergySample> energy_series;
  bool deactivated = false;
  SimTime deactivated_at = 0;
  bool election_failed = false;   // initial election could not produce roles
  std::string election_error;
};

// Runs one deterministic simulation: identical configs (seed included) yield
// byte-identical traces. An initial election failure still returns the
// partial trace with election_failed set.
RunResult run_simulation(const ScenarioConfig& cfg);

GroundTruth ground_truth_for(const ScenarioConfig& cfg, NodeId gn);

}  // namespace segnet
