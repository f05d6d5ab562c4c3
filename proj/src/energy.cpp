#include "segnet/energy.hpp"

namespace segnet {

const char* to_string(Activity a) {
  switch (a) {
    case Activity::Tx: return "tx";
    case Activity::Rx: return "rx";
    case Activity::Sense: return "sense";
    case Activity::Detect: return "detect";
    case Activity::Idle: return "idle";
    case Activity::Sleep: return "sleep";
  }
  return "?";
}

Energy EnergyModel::initial_for(NodeCategory c) const {
  switch (c) {
    case NodeCategory::Base: return initial_base;
    case NodeCategory::Intelligent: return initial_intelligent;
    case NodeCategory::Simple: return initial_simple;
  }
  return 0;
}

Energy EnergyModel::activity_cost(Activity a) const {
  switch (a) {
    case Activity::Tx: return cost_tx;
    case Activity::Rx: return cost_rx;
    case Activity::Sense: return cost_sense;
    case Activity::Detect: return cost_detect;
    default: return 0;
  }
}

void EnergyLedger::register_node(const NodeState& node, SimTime now) {
  initial_[node.id] = node.energy;
  charged_[node.id] = 0;
  last_accrual_[node.id] = now;
}

bool EnergyLedger::accrue(Network& net, const EnergyModel& model, NodeId id, SimTime now) {
  NodeState& node = net.at(id);
  SimTime& last = last_accrual_.at(id);
  if (now <= last || !node.alive()) {
    if (now > last) last = now;
    return false;
  }
  const SimTime span = now - last;
  last = now;
  const bool asleep = node.power == PowerMode::Asleep;
  const Energy rate = asleep ? model.cost_sleep_per_time : model.cost_idle_per_time;
  const Energy amount = rate * span / kTimeScale;
  if (amount <= 0) return false;
  return apply(net, id, asleep ? Activity::Sleep : Activity::Idle, amount, now);
}

void EnergyLedger::accrue_all(Network& net, const EnergyModel& model, SimTime now,
                              std::vector<NodeId>* died) {
  for (auto& [id, node] : net.nodes) {
    (void)node;
    if (accrue(net, model, id, now) && died != nullptr) died->push_back(id);
  }
}

bool EnergyLedger::charge(Network& net, const EnergyModel& model, NodeId id, Activity a,
                          SimTime now) {
  const bool was_alive = net.at(id).alive();
  accrue(net, model, id, now);
  if (net.at(id).alive()) apply(net, id, a, model.activity_cost(a), now);
  return was_alive && !net.at(id).alive();
}

bool EnergyLedger::apply(Network& net, NodeId id, Activity a, Energy amount, SimTime now) {
  NodeState& node = net.at(id);
  if (!node.alive() || amount <= 0) return false;
  // Clamp the dying charge so the ledger still balances exactly.
  const Energy applied = amount > node.energy ? node.energy : amount;
  node.energy -= applied;
  charged_[id] += applied;
  log_.push_back({now, id, a, applied});
  if (node.energy == 0) {
    node.disposition = Disposition::Dead;
    node.power = PowerMode::Asleep;
    return true;
  }
  return false;
}

Energy EnergyLedger::residual(const Network& net, NodeId id) const {
  return net.at(id).energy;
}

Energy EnergyLedger::initial(NodeId id) const { return initial_.at(id); }

Energy EnergyLedger::total_charged(NodeId id) const { return charged_.at(id); }

int alive_count(const Network& net) {
  int n = 0;
  for (const auto& [id, node] : net.nodes) {
    (void)id;
    if (node.alive()) ++n;
  }
  return n;
}

bool below_lifetime_threshold(const Network& net, std::int64_t threshold_milli) {
  const std::int64_t alive = alive_count(net);
  const std::int64_t total = static_cast<std::int64_t>(net.nodes.size());
  if (total == 0) return true;
  return alive * kMilli < threshold_milli * total;
}

}  // namespace segnet
