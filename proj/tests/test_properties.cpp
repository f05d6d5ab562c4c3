#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "segnet/replay.hpp"
#include "segnet/simkernel.hpp"
#include "segnet/topology.hpp"

using namespace segnet;

namespace {

struct RandomTopology {
  std::vector<NodeSpec> specs;
  double range = 0.0;
  int k_mn = 0;
  int z_zo = 0;
  std::set<NodeId> blocked;
  std::set<NodeId> dead;
};

RandomTopology random_topology(std::mt19937_64& rng) {
  RandomTopology t;
  int n = 5 + static_cast<int>(rng() % 36);
  t.range = 8.0 + static_cast<double>(rng() % 18);
  t.k_mn = 1 + static_cast<int>(rng() % 4);
  t.z_zo = 1 + static_cast<int>(rng() % 2);
  for (NodeId id = 1; id <= static_cast<NodeId>(n); ++id) {
    NodeSpec s;
    s.id = id;
    if (id == 1) {
      s.pos = {15.0, 15.0};
      s.category = NodeCategory::Base;
      s.initial_energy = 3000000000;
    } else {
      s.pos = {static_cast<double>(rng() % 121) / 4.0, static_cast<double>(rng() % 121) / 4.0};
      if (rng() % 100 < 55) {
        s.category = NodeCategory::Intelligent;
        s.initial_energy = 2000000000;
      } else {
        s.category = NodeCategory::Simple;
        s.initial_energy = 1000000000;
      }
    }
    t.specs.push_back(s);
  }
  for (const auto& s : t.specs) {
    if (s.id == 1) continue;
    std::uint64_t roll = rng() % 100;
    if (roll < 5) t.blocked.insert(s.id);
    else if (roll < 10) t.dead.insert(s.id);
  }
  return t;
}

double dist2(const Network& net, NodeId a, NodeId b) {
  return distance(net.at(a).pos, net.at(b).pos);
}

}  // namespace

TEST_CASE("election invariants hold on random topologies") {
  int elected = 0;
  int failed = 0;
  for (int trial = 0; trial < 150; ++trial) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(trial) * 7919 + 17);
    RandomTopology t = random_topology(rng);
    Network net = deploy(t.specs, t.range);
    for (auto& [id, node] : net.nodes) {
      if (node.category == NodeCategory::Simple) node.desig = Designation::SN;
      if (t.blocked.count(id)) node.disposition = Disposition::Blocked;
      if (t.dead.count(id)) node.disposition = Disposition::Dead;
    }
    ElectionParams params{1, t.k_mn, t.z_zo, 2 * kTimeScale, kTimeScale};
    RoleAssignment roles;
    try {
      roles = elect_roles(net, params, rng, true, nullptr, false);
    } catch (const ElectionError&) {
      ++failed;
      continue;
    }
    ++elected;
    CAPTURE(trial);

    // Exactly one gateway, exactly one cluster owner.
    int gn_count = 0, co_count = 0;
    for (const auto& [id, node] : net.nodes) {
      if (node.desig == Designation::GN) ++gn_count;
      if (node.desig == Designation::CO) ++co_count;
    }
    CHECK(gn_count == 1);
    CHECK(co_count == 1);

    // The owner is a usable intelligent gateway neighbor, never a quarantined
    // or dead node.
    REQUIRE(roles.co != 0);
    CHECK(net.at(roles.co).usable());
    CHECK(net.at(roles.co).category == NodeCategory::Intelligent);
    CHECK(net.at(roles.co).maturity == 1);
    CHECK(roles.g_neighbors.count(roles.co) == 1);
    CHECK(dist2(net, 1, roles.co) <= t.range);
    CHECK(t.blocked.count(roles.co) == 0);
    CHECK(t.dead.count(roles.co) == 0);

    // Monitors: capped, distinct, usable intelligent cluster members.
    CHECK(static_cast<int>(roles.mns.size()) <= t.k_mn);
    std::set<NodeId> mn_set(roles.mns.begin(), roles.mns.end());
    CHECK(mn_set.size() == roles.mns.size());
    for (NodeId mn : roles.mns) {
      CHECK(mn != roles.co);
      CHECK(mn != 1);
      CHECK(net.at(mn).usable());
      CHECK(net.at(mn).category == NodeCategory::Intelligent);
      CHECK(net.at(mn).desig == Designation::MN);
      CHECK(dist2(net, roles.co, mn) <= t.range);
      CHECK(t.blocked.count(mn) == 0);
      CHECK(t.dead.count(mn) == 0);
    }

    // Zone owners: disjoint from monitors, same pool conditions.
    CHECK(!roles.zos.empty());
    CHECK(static_cast<int>(roles.zos.size()) <= t.z_zo);
    for (NodeId zo : roles.zos) {
      CHECK(mn_set.count(zo) == 0);
      CHECK(zo != roles.co);
      CHECK(net.at(zo).usable());
      CHECK(net.at(zo).category == NodeCategory::Intelligent);
      CHECK(net.at(zo).desig == Designation::ZO);
      CHECK(dist2(net, roles.co, zo) <= t.range);
    }

    // Zones partition the usable sensing nodes; each member is attached to
    // its nearest usable owner in range, ties to the lower id.
    std::set<NodeId> zoned;
    for (const auto& [zo, members] : roles.zones) {
      CHECK(std::find(roles.zos.begin(), roles.zos.end(), zo) != roles.zos.end());
      for (NodeId sn : members) {
        CHECK(zoned.insert(sn).second);  // no double membership
        CHECK(net.at(sn).category == NodeCategory::Simple);
        CHECK(net.at(sn).usable());
        double own = dist2(net, zo, sn);
        CHECK(own <= t.range);
        for (NodeId other : roles.zos) {
          if (other == zo || !net.at(other).usable()) continue;
          double d = dist2(net, other, sn);
          if (d > t.range) continue;
          CHECK((own < d || (own == d && zo < other)));
        }
      }
    }
    for (NodeId sn : roles.unreachable_sns) {
      CHECK(zoned.count(sn) == 0);
      for (NodeId zo : roles.zos) {
        if (net.at(zo).usable()) CHECK(dist2(net, zo, sn) > t.range);
      }
    }
    for (const auto& [id, node] : net.nodes) {
      if (node.category != NodeCategory::Simple || !node.usable()) continue;
      CHECK(zoned.count(id) + roles.unreachable_sns.count(id) == 1);
    }
  }
  // The generator is tuned so a healthy share of topologies is electable.
  CHECK(elected >= 100);
  CHECK(elected + failed == 150);
}

namespace {

nlohmann::json random_scenario(std::mt19937_64& rng, std::uint64_t seed) {
  int k_mn = 2 + static_cast<int>(rng() % 3);
  int z_zo = 1 + static_cast<int>(rng() % 2);
  int mi = 1 + k_mn + z_zo + static_cast<int>(rng() % 3);
  int ms = 2 + static_cast<int>(rng() % 5);
  int duration = 120 + static_cast<int>(rng() % 181);
  double range = 12.0 + static_cast<double>(rng() % 4);

  nlohmann::json doc;
  doc["radio_range"] = range;
  doc["k_mn"] = k_mn;
  doc["z_zo"] = z_zo;
  doc["nodes"] = nlohmann::json::array();
  doc["nodes"].push_back({{"id", 1}, {"x", 0.0}, {"y", 0.0}, {"category", "base"}});
  NodeId next = 2;
  std::vector<NodeId> sns;
  for (int i = 0; i < mi; ++i) {
    double ang = 2.0 * 3.14159265358979 * i / mi;
    double r = 4.0 + static_cast<double>(rng() % 3);
    doc["nodes"].push_back({{"id", next},
                            {"x", std::round(std::cos(ang) * r * 4.0) / 4.0},
                            {"y", std::round(std::sin(ang) * r * 4.0) / 4.0},
                            {"category", "intelligent"}});
    ++next;
  }
  for (int i = 0; i < ms; ++i) {
    double ang = 2.0 * 3.14159265358979 * (i + 0.5) / ms;
    double r = 7.0 + static_cast<double>(rng() % 4);
    doc["nodes"].push_back({{"id", next},
                            {"x", std::round(std::cos(ang) * r * 4.0) / 4.0},
                            {"y", std::round(std::sin(ang) * r * 4.0) / 4.0},
                            {"category", "simple"}});
    sns.push_back(next);
    ++next;
  }
  if (rng() % 3 != 0) {
    std::vector<NodeId> targets;
    std::uint64_t want = 1 + rng() % std::min<std::uint64_t>(3, sns.size());
    for (NodeId sn : sns) {
      if (targets.size() < want) targets.push_back(sn);
    }
    doc["attacker"] = {{"targets", targets},
                       {"rate", 0.5 + static_cast<double>(rng() % 4) * 0.5},
                       {"active_window", {0, duration}}};
  }
  if (rng() % 2 == 0) {
    doc["thresholds"] = {{"warning_block_threshold", 4 + static_cast<int>(rng() % 5)}};
  }
  doc["sim"] = {{"duration", duration}, {"seed", seed}};
  return doc;
}

}  // namespace

TEST_CASE("trace invariants hold across random simulations") {
  int simulated = 0;
  for (int trial = 0; trial < 24; ++trial) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(trial) * 104729 + 3);
    nlohmann::json doc = random_scenario(rng, static_cast<std::uint64_t>(trial) + 1);
    ScenarioConfig cfg = resolve_scenario(doc, "random");
    RunResult res = run_simulation(cfg);
    CAPTURE(trial);
    if (res.election_failed) continue;
    ++simulated;

    // Total order and the header-first rule.
    REQUIRE(!res.trace.empty());
    CHECK(res.trace.front().at("ev") == "run_header");
    SimTime last_t = -1;
    std::int64_t last_seq = -1;
    for (const auto& r : res.trace) {
      SimTime t = r.at("t").get<SimTime>();
      std::int64_t seq = r.at("seq").get<std::int64_t>();
      CHECK(t >= last_t);
      CHECK(seq > last_seq);
      last_t = t;
      last_seq = seq;
    }

    // Exact energy conservation and non-negative balances.
    std::map<NodeId, Energy> logged;
    for (const auto& e : res.ledger.log()) logged[e.node] += e.amount;
    for (const auto& [id, node] : res.net.nodes) {
      REQUIRE(node.energy >= 0);
      CHECK(res.ledger.initial(id) - node.energy == res.ledger.total_charged(id));
      CHECK(logged[id] == res.ledger.total_charged(id));
    }

    // Residual series never rises.
    std::map<NodeId, Energy> last_sample;
    for (const auto& s : res.energy_series) {
      auto it = last_sample.find(s.node);
      if (it != last_sample.end()) CHECK(s.residual <= it->second);
      last_sample[s.node] = s.residual;
    }

    // Every transmission resolves exactly one way, and the counts match the
    // rolled-up metrics.
    std::int64_t delivered = 0, dropped = 0;
    std::map<NodeId, SimTime> block_at;
    for (const auto& r : res.trace) {
      std::string ev = r.at("ev").get<std::string>();
      if (ev == "msg") {
        std::string result = r.at("result").get<std::string>();
        REQUIRE((result == "delivered" || result == "dropped"));
        if (result == "delivered") ++delivered;
        if (result == "dropped") ++dropped;
      } else if (ev == "block") {
        NodeId s = r.at("subject").get<NodeId>();
        if (block_at.count(s) == 0) block_at[s] = r.at("t").get<SimTime>();
      }
    }
    CHECK(res.metrics.messages_sent == delivered + dropped);
    CHECK(res.metrics.messages_delivered == delivered);
    CHECK(res.metrics.messages_dropped == dropped);

    // A blocked node transmits nothing afterwards, and nothing it sent
    // earlier is delivered after the block lands.
    for (const auto& r : res.trace) {
      if (r.at("ev") != "msg") continue;
      NodeId src = r.value("src", NodeId{0});
      auto it = block_at.find(src);
      if (it == block_at.end()) continue;
      CHECK(r.at("sent_at").get<SimTime>() <= it->second);
      if (r.at("result") == "delivered") CHECK(r.at("t").get<SimTime>() <= it->second);
    }

    // Drop-fake verdicts always rest on at least two distinct monitors.
    for (const auto& r : res.trace) {
      if (r.at("ev") != "decision") continue;
      if (r.at("action") == "drop_fake") CHECK(r.at("tickets").size() >= 2);
    }

    // Deaths in the trace mirror the final population.
    std::set<NodeId> died;
    for (const auto& r : res.trace) {
      if (r.at("ev") == "death") died.insert(r.at("node").get<NodeId>());
    }
    for (const auto& [id, node] : res.net.nodes) {
      CHECK(died.count(id) == (node.alive() ? 0u : 1u));
    }

    if (res.deactivated) {
      CHECK(res.metrics.network_lifetime == res.deactivated_at);
      CHECK(res.deactivated_at <= cfg.duration);
    } else {
      CHECK(res.metrics.network_lifetime == cfg.duration);
    }

    // The independent verdict replayer agrees with the whole trace.
    ReplayReport rep = replay_trace(res.trace, cfg);
    CHECK(rep.divergence_count == 0);
    CHECK(!rep.digest_mismatch);
    if (!rep.ok()) {
      for (const auto& d : rep.divergences) MESSAGE(d);
    }
  }
  CHECK(simulated >= 20);
}
