#pragma once

#include <map>
#include <vector>

#include "segnet/types.hpp"

namespace segnet {

enum class Activity { Tx, Rx, Sense, Detect, Idle, Sleep };

const char* to_string(Activity a);

struct EnergyModel {
  Energy cost_tx = 0;
  Energy cost_rx = 0;
  Energy cost_sense = 0;
  Energy cost_detect = 0;
  Energy cost_idle_per_time = 0;   // per configured time unit
  Energy cost_sleep_per_time = 0;  // per configured time unit
  Energy initial_simple = 0;
  Energy initial_intelligent = 0;
  Energy initial_base = 0;

  Energy initial_for(NodeCategory c) const;
  Energy activity_cost(Activity a) const;
};

struct ChargeEntry {
  SimTime t = 0;
  NodeId node = 0;
  Activity activity = Activity::Idle;
  Energy amount = 0;
};

// Append-only charge log plus lazy idle/sleep accrual. The balance lives on
// NodeState.energy; the ledger guarantees initial - balance == sum(charges)
// exactly, including the clamped final charge that marks death.
class EnergyLedger {
 public:
  void register_node(const NodeState& node, SimTime now);

  // Accrue idle/sleep cost up to `now` per the node's current power mode.
  // Must run before any activity charge or balance read at `now`.
  // Returns true if the accrual drained the node dead.
  bool accrue(Network& net, const EnergyModel& model, NodeId id, SimTime now);
  void accrue_all(Network& net, const EnergyModel& model, SimTime now,
                  std::vector<NodeId>* died = nullptr);

  // Returns true if the node died during this call (accrual or activity).
  bool charge(Network& net, const EnergyModel& model, NodeId id, Activity a, SimTime now);

  Energy residual(const Network& net, NodeId id) const;
  Energy initial(NodeId id) const;
  Energy total_charged(NodeId id) const;

  const std::vector<ChargeEntry>& log() const { return log_; }

 private:
  bool apply(Network& net, NodeId id, Activity a, Energy amount, SimTime now);

  std::map<NodeId, Energy> initial_;
  std::map<NodeId, Energy> charged_;
  std::map<NodeId, SimTime> last_accrual_;
  std::vector<ChargeEntry> log_;
};

// Alive = not Dead (Blocked nodes count as alive).
int alive_count(const Network& net);
// fraction < threshold, compared exactly in fixed point.
bool below_lifetime_threshold(const Network& net, std::int64_t threshold_milli);

}  // namespace segnet
