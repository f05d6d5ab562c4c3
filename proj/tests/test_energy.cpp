#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "segnet/energy.hpp"

using namespace segnet;

namespace {

EnergyModel default_model() {
  EnergyModel m;
  m.cost_tx = energy_from_double(3.0);
  m.cost_rx = energy_from_double(2.0);
  m.cost_sense = energy_from_double(1.0);
  m.cost_detect = energy_from_double(1.0);
  m.cost_idle_per_time = energy_from_double(0.1);
  m.cost_sleep_per_time = energy_from_double(0.01);
  m.initial_simple = energy_from_double(1000.0);
  m.initial_intelligent = energy_from_double(2000.0);
  m.initial_base = energy_from_double(3000.0);
  return m;
}

Network one_node_net(Energy initial, PowerMode power = PowerMode::Awake) {
  Network net;
  NodeState n;
  n.id = 1;
  n.energy = initial;
  n.initial_energy = initial;
  n.power = power;
  net.nodes[1] = n;
  return net;
}

}  // namespace

TEST_CASE("fixed point conversions") {
  CHECK(energy_from_double(3.0) == 3000000);
  CHECK(energy_from_double(0.01) == 10000);
  CHECK(time_from_double(1.0) == 1000);
  CHECK(time_from_double(0.5) == 500);
  CHECK(milli_from_double(0.15) == 150);
  CHECK(format_energy(1500000) == "1.500000");
  CHECK(format_time(2500) == "2.500");
}

TEST_CASE("activity costs map to the model") {
  EnergyModel m = default_model();
  CHECK(m.activity_cost(Activity::Tx) == 3000000);
  CHECK(m.activity_cost(Activity::Rx) == 2000000);
  CHECK(m.activity_cost(Activity::Sense) == 1000000);
  CHECK(m.activity_cost(Activity::Detect) == 1000000);
  CHECK(m.activity_cost(Activity::Idle) == 0);
  CHECK(m.initial_for(NodeCategory::Base) == 3000000000);
  CHECK(m.initial_for(NodeCategory::Intelligent) == 2000000000);
  CHECK(m.initial_for(NodeCategory::Simple) == 1000000000);
}

TEST_CASE("idle accrual charges rate times span") {
  EnergyModel m = default_model();
  Network net = one_node_net(m.initial_simple);
  EnergyLedger ledger;
  ledger.register_node(net.at(1), 0);
  ledger.accrue(net, m, 1, 10 * kTimeScale);
  // 0.1 per unit for 10 units.
  CHECK(ledger.residual(net, 1) == m.initial_simple - energy_from_double(1.0));
  CHECK(ledger.total_charged(1) == energy_from_double(1.0));
}

TEST_CASE("sleep accrual uses the sleep rate") {
  EnergyModel m = default_model();
  Network net = one_node_net(m.initial_simple, PowerMode::Asleep);
  EnergyLedger ledger;
  ledger.register_node(net.at(1), 0);
  ledger.accrue(net, m, 1, 100 * kTimeScale);
  CHECK(ledger.residual(net, 1) == m.initial_simple - energy_from_double(1.0));
}

TEST_CASE("accrual is idempotent at the same timestamp") {
  EnergyModel m = default_model();
  Network net = one_node_net(m.initial_simple);
  EnergyLedger ledger;
  ledger.register_node(net.at(1), 0);
  ledger.accrue(net, m, 1, 5 * kTimeScale);
  Energy after = ledger.residual(net, 1);
  ledger.accrue(net, m, 1, 5 * kTimeScale);
  CHECK(ledger.residual(net, 1) == after);
}

TEST_CASE("activity charge accrues first") {
  EnergyModel m = default_model();
  Network net = one_node_net(m.initial_simple);
  EnergyLedger ledger;
  ledger.register_node(net.at(1), 0);
  ledger.charge(net, m, 1, Activity::Tx, 4 * kTimeScale);
  // 0.4 idle plus 3.0 tx.
  CHECK(ledger.residual(net, 1) == m.initial_simple - energy_from_double(3.4));
  CHECK(ledger.log().size() == 2);
}

TEST_CASE("dying charge is clamped and the ledger still balances") {
  EnergyModel m = default_model();
  Network net = one_node_net(energy_from_double(2.5));
  EnergyLedger ledger;
  ledger.register_node(net.at(1), 0);
  bool died = ledger.charge(net, m, 1, Activity::Tx, 0);
  CHECK(died);
  CHECK(net.at(1).alive() == false);
  CHECK(net.at(1).power == PowerMode::Asleep);
  CHECK(ledger.residual(net, 1) == 0);
  CHECK(ledger.initial(1) - ledger.residual(net, 1) == ledger.total_charged(1));
  CHECK(ledger.total_charged(1) == energy_from_double(2.5));
}

TEST_CASE("dead nodes accept no further charges") {
  EnergyModel m = default_model();
  Network net = one_node_net(energy_from_double(1.0));
  EnergyLedger ledger;
  ledger.register_node(net.at(1), 0);
  ledger.charge(net, m, 1, Activity::Tx, 0);
  CHECK(net.at(1).alive() == false);
  bool died_again = ledger.charge(net, m, 1, Activity::Rx, kTimeScale);
  CHECK(died_again == false);
  CHECK(ledger.total_charged(1) == energy_from_double(1.0));
  ledger.accrue(net, m, 1, 50 * kTimeScale);
  CHECK(ledger.total_charged(1) == energy_from_double(1.0));
}

TEST_CASE("accrue_all reports which nodes died of drain") {
  EnergyModel m = default_model();
  Network net;
  for (NodeId id = 1; id <= 3; ++id) {
    NodeState n;
    n.id = id;
    n.energy = id == 2 ? energy_from_double(0.5) : m.initial_simple;
    n.initial_energy = n.energy;
    net.nodes[id] = n;
  }
  EnergyLedger ledger;
  for (NodeId id = 1; id <= 3; ++id) ledger.register_node(net.at(id), 0);
  std::vector<NodeId> died;
  ledger.accrue_all(net, m, 10 * kTimeScale, &died);
  CHECK(died == std::vector<NodeId>{2});
  CHECK(net.at(2).alive() == false);
  CHECK(ledger.initial(2) - ledger.residual(net, 2) == ledger.total_charged(2));
}

TEST_CASE("conservation holds over a random charge sequence") {
  EnergyModel m = default_model();
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    Network net = one_node_net(energy_from_double(5.0 + double(rng() % 200) / 10.0));
    EnergyLedger ledger;
    ledger.register_node(net.at(1), 0);
    SimTime now = 0;
    for (int i = 0; i < 40; ++i) {
      now += static_cast<SimTime>(rng() % 3000);
      Activity a = static_cast<Activity>(rng() % 4);  // tx, rx, sense, detect
      if (rng() % 2 == 0) net.at(1).power = (rng() % 2 ? PowerMode::Awake : PowerMode::Asleep);
      ledger.charge(net, m, 1, a, now);
    }
    Energy sum = 0;
    for (const auto& e : ledger.log()) sum += e.amount;
    CHECK(ledger.initial(1) - ledger.residual(net, 1) == sum);
    CHECK(ledger.total_charged(1) == sum);
    CHECK(ledger.residual(net, 1) >= 0);
  }
}

TEST_CASE("blocked nodes count as alive for the lifetime threshold") {
  Network net;
  for (NodeId id = 1; id <= 10; ++id) {
    NodeState n;
    n.id = id;
    n.energy = 1;
    net.nodes[id] = n;
  }
  net.at(1).disposition = Disposition::Blocked;
  CHECK(alive_count(net) == 10);
  net.at(2).disposition = Disposition::Dead;
  CHECK(alive_count(net) == 9);
}

TEST_CASE("lifetime threshold compares exactly in fixed point") {
  Network net;
  for (NodeId id = 1; id <= 14; ++id) {
    NodeState n;
    n.id = id;
    n.energy = 1;
    net.nodes[id] = n;
  }
  // 0.7 of 14 is 9.8: ten alive is above, nine is below.
  for (NodeId id = 1; id <= 4; ++id) net.at(id).disposition = Disposition::Dead;
  CHECK(alive_count(net) == 10);
  CHECK(below_lifetime_threshold(net, 700) == false);
  net.at(5).disposition = Disposition::Dead;
  CHECK(below_lifetime_threshold(net, 700) == true);
  // Exact boundary: alive fraction equal to the threshold is not below it.
  Network half;
  for (NodeId id = 1; id <= 4; ++id) {
    NodeState n;
    n.id = id;
    n.energy = 1;
    if (id > 2) n.disposition = Disposition::Dead;
    half.nodes[id] = n;
  }
  CHECK(below_lifetime_threshold(half, 500) == false);
}
