#include "segnet/casestudy.hpp"

#include <algorithm>
#include <set>

#include "segnet/protocol.hpp"

namespace segnet {

const char* to_string(StepState s) {
  switch (s) {
    case StepState::Pass: return "PASS";
    case StepState::Fail: return "FAIL";
    case StepState::NotReached: return "NOT-REACHED";
  }
  return "?";
}

bool CaseStudyReport::all_passed() const {
  for (const auto& s : steps) {
    if (s.state != StepState::Pass) return false;
  }
  return true;
}

const char* casestudy_scenario_text() {
  return R"json({
  "name": "casestudy",
  "radio_range": 12.0,
  "nodes": [
    {"id": 1,  "x": 26, "y": 9,  "category": "simple"},
    {"id": 2,  "x": 26, "y": 3,  "category": "simple"},
    {"id": 3,  "x": 26, "y": -9, "category": "simple"},
    {"id": 4,  "x": 26, "y": -3, "category": "simple"},
    {"id": 5,  "x": 18, "y": 6,  "category": "intelligent"},
    {"id": 6,  "x": 18, "y": -6, "category": "intelligent"},
    {"id": 7,  "x": 13, "y": 4,  "category": "intelligent"},
    {"id": 8,  "x": 13, "y": -4, "category": "intelligent"},
    {"id": 9,  "x": 14, "y": 2,  "category": "intelligent"},
    {"id": 10, "x": 14, "y": -2, "category": "intelligent"},
    {"id": 11, "x": 15, "y": 5,  "category": "intelligent"},
    {"id": 12, "x": 15, "y": -5, "category": "intelligent"},
    {"id": 13, "x": 10, "y": 0,  "category": "intelligent"},
    {"id": 14, "x": 0,  "y": 0,  "category": "base"}
  ],
  "attacker": {
    "kind": "sleep_deprivation",
    "targets": [1],
    "rate": 0.5,
    "active_window": [0, 300]
  },
  "sim": {"duration": 300, "seed": 7}
})json";
}

namespace {

constexpr NodeId kTarget = 1;
constexpr NodeId kGateway = 14;
constexpr NodeId kExpectedCo = 13;

struct Checker {
  const std::vector<TraceRecord>& trace;
  const ScenarioConfig& cfg;
  std::vector<StepResult> steps;
  SimTime block_t = -1;

  void add(const std::string& name, StepState state, const std::string& detail) {
    steps.push_back({name, state, detail});
  }

  // Finds the first record satisfying pred, or nullptr.
  template <typename Pred>
  const TraceRecord* find(Pred pred) const {
    for (const auto& r : trace) {
      if (pred(r)) return &r;
    }
    return nullptr;
  }

  static bool is_ev(const TraceRecord& r, const char* ev) {
    return r.at("ev").get<std::string>() == ev;
  }

  void run() {
    step_election();
    step_forged_coin();
    step_suspicion_stamp();
    step_early_drop();
    step_corroborated_drop();
    step_observed();
    step_block();
    step_quiescence();
    step_legitimate_flow();
    step_clean_outcome();
  }

  void step_election() {
    const auto* r = find([](const TraceRecord& x) { return is_ev(x, "election"); });
    if (r == nullptr) {
      add("initial role election", StepState::NotReached, "no election record");
      return;
    }
    std::vector<NodeId> mn_list = r->at("mns").get<std::vector<NodeId>>();
    std::set<NodeId> mns(mn_list.begin(), mn_list.end());
    std::vector<NodeId> zos = r->at("zos").get<std::vector<NodeId>>();
    std::set<NodeId> want_mns = {7, 8, 9, 10, 11, 12};
    std::vector<NodeId> want_zos = {5, 6};
    bool ok = r->at("co").get<NodeId>() == kExpectedCo && mns == want_mns && zos == want_zos;
    if (ok) {
      auto z5 = r->at("zones").at("5").get<std::vector<NodeId>>();
      auto z6 = r->at("zones").at("6").get<std::vector<NodeId>>();
      ok = z5 == std::vector<NodeId>{1, 2} && z6 == std::vector<NodeId>{3, 4};
    }
    add("initial role election", ok ? StepState::Pass : StepState::Fail,
        ok ? "co=13 mns={7..12} zos=[5,6] zones 5:{1,2} 6:{3,4}"
           : "roles differ from the expected assignment: " + r->dump());
  }

  void step_forged_coin() {
    const auto* r = find([](const TraceRecord& x) {
      return is_ev(x, "msg") && x.at("kind").get<std::string>() == "wakeup_coin" &&
             x.value("forged", false) && x.at("dst").get<NodeId>() == kTarget &&
             x.at("result").get<std::string>() == "delivered";
    });
    if (r == nullptr) {
      add("forged wake-up reaches the target", StepState::NotReached,
          "no forged coin delivered to node 1");
      return;
    }
    bool asleep = in_sleep_window(cfg.duty, r->at("t").get<SimTime>());
    bool ok = !r->at("solicited").get<bool>() && asleep;
    add("forged wake-up reaches the target", ok ? StepState::Pass : StepState::Fail,
        ok ? "unsolicited coin lands in the sleep window at t=" +
                 format_time(r->at("t").get<SimTime>())
           : "expected unsolicited delivery inside the sleep window, got " + r->dump());
  }

  void step_suspicion_stamp() {
    const auto* r = find([](const TraceRecord& x) {
      return is_ev(x, "stamp") && x.at("origin").get<NodeId>() == kTarget;
    });
    if (r == nullptr) {
      add("zone owner stamps the reply suspected", StepState::NotReached,
          "no stamp record for packets from node 1");
      return;
    }
    bool ok = r->at("zo").get<NodeId>() == 5 && r->at("sleep_hit").get<bool>() &&
              r->at("status").get<int>() == 1;
    add("zone owner stamps the reply suspected", ok ? StepState::Pass : StepState::Fail,
        ok ? "zo=5 flags the sleep-window receipt with status 1"
           : "expected zo=5, sleep_hit, status=1, got " + r->dump());
  }

  void step_early_drop() {
    const auto* r = find([](const TraceRecord& x) {
      return is_ev(x, "decision") && x.at("origin").get<NodeId>() == kTarget;
    });
    if (r == nullptr) {
      add("early suspected reply dropped as erroneous", StepState::NotReached,
          "no decision for packets from node 1");
      return;
    }
    bool ok = r->at("action").get<std::string>() == "drop_erroneous" &&
              r->at("tickets").get<std::vector<NodeId>>().empty();
    add("early suspected reply dropped as erroneous", ok ? StepState::Pass : StepState::Fail,
        ok ? "first verdict is drop_erroneous with no tickets"
           : "expected drop_erroneous with zero tickets, got " + r->dump());
  }

  void step_corroborated_drop() {
    const auto* r = find([](const TraceRecord& x) {
      return is_ev(x, "decision") && x.at("origin").get<NodeId>() == kTarget &&
             x.at("action").get<std::string>() == "drop_fake";
    });
    if (r == nullptr) {
      add("monitors corroborate a fake packet", StepState::NotReached,
          "no drop_fake decision for node 1");
      return;
    }
    std::vector<NodeId> vec = r->at("tickets").get<std::vector<NodeId>>();
    std::set<NodeId> issuers(vec.begin(), vec.end());
    bool ok = issuers.size() >= 2 && issuers.count(7) && issuers.count(8);
    add("monitors corroborate a fake packet", ok ? StepState::Pass : StepState::Fail,
        ok ? "drop_fake at t=" + format_time(r->at("t").get<SimTime>()) + " with " +
                 std::to_string(issuers.size()) + " distinct issuers including 7 and 8"
           : "expected tickets from at least monitors 7 and 8, got " + r->dump());
  }

  void step_observed() {
    const auto* r = find([](const TraceRecord& x) { return is_ev(x, "observed"); });
    if (r == nullptr) {
      add("target moves to Observed", StepState::NotReached, "no observed record");
      return;
    }
    bool ok = r->at("subject").get<NodeId>() == kTarget;
    add("target moves to Observed", ok ? StepState::Pass : StepState::Fail,
        ok ? "node 1 observed at t=" + format_time(r->at("t").get<SimTime>())
           : "unexpected observed subject: " + r->dump());
  }

  void step_block() {
    const auto* r = find([](const TraceRecord& x) { return is_ev(x, "block"); });
    if (r == nullptr) {
      add("target blocked on the warning threshold", StepState::NotReached, "no block record");
      return;
    }
    bool ok = r->at("subject").get<NodeId>() == kTarget &&
              r->at("rule").get<std::string>() == "warning_threshold" &&
              r->at("by").get<NodeId>() == kExpectedCo && r->value("distinct", 0) >= 2;
    if (ok) block_t = r->at("t").get<SimTime>();
    add("target blocked on the warning threshold", ok ? StepState::Pass : StepState::Fail,
        ok ? "node 1 blocked by co=13 at t=" + format_time(block_t)
           : "unexpected block record: " + r->dump());
  }

  void step_quiescence() {
    if (block_t < 0) {
      add("blocked target goes quiet", StepState::NotReached, "block step did not pass");
      return;
    }
    const auto* late_reply = find([&](const TraceRecord& x) {
      return is_ev(x, "msg") && x.at("kind").get<std::string>() == "data_packet" &&
             x.at("src").get<NodeId>() == kTarget && x.at("sent_at").get<SimTime>() > block_t;
    });
    const auto* late_coin = find([&](const TraceRecord& x) {
      return is_ev(x, "msg") && x.at("kind").get<std::string>() == "wakeup_coin" &&
             x.value("forged", false) && x.at("dst").get<NodeId>() == kTarget &&
             x.at("result").get<std::string>() == "delivered" &&
             x.at("t").get<SimTime>() > block_t;
    });
    bool ok = late_reply == nullptr && late_coin != nullptr;
    add("blocked target goes quiet", ok ? StepState::Pass : StepState::Fail,
        ok ? "attack continues but the target transmits nothing after the block"
           : (late_reply != nullptr ? "target still transmitted after the block: " +
                                          late_reply->dump()
                                    : "no forged coins observed after the block"));
  }

  void step_legitimate_flow() {
    if (block_t < 0) {
      add("legitimate traffic still flows", StepState::NotReached, "block step did not pass");
      return;
    }
    std::set<NodeId> forwarded;
    PktId via_f = 0;
    for (const auto& x : trace) {
      if (!is_ev(x, "msg") || x.at("kind").get<std::string>() != "data_packet") continue;
      if (x.at("result").get<std::string>() != "delivered") continue;
      if (x.at("dst").get<NodeId>() != kGateway) continue;
      if (x.at("t").get<SimTime>() <= block_t) continue;
      NodeId origin = x.at("origin").get<NodeId>();
      forwarded.insert(origin);
      if (origin == 4 && via_f == 0 && x.value("stamped_by", NodeId{0}) == 6) {
        via_f = x.at("pkt").get<PktId>();
      }
    }
    // The node 4 reading must also have been watched by monitors 9 and 10.
    std::set<NodeId> watchers;
    for (const auto& x : trace) {
      if (is_ev(x, "observe") && x.at("pkt").get<PktId>() == via_f) {
        watchers.insert(x.at("mn").get<NodeId>());
      }
    }
    bool ok = forwarded.count(2) && forwarded.count(3) && forwarded.count(4) && via_f != 0 &&
              watchers.count(9) && watchers.count(10);
    std::string got;
    for (NodeId n : forwarded) got += (got.empty() ? "" : ",") + std::to_string(n);
    add("legitimate traffic still flows", ok ? StepState::Pass : StepState::Fail,
        ok ? "readings from nodes 2, 3 and 4 reach the gateway after the block; node 4's "
             "reading went through zone owner 6 under watch by monitors 9 and 10"
           : "origins forwarded after the block: {" + got + "}, expected 2, 3 and 4 with "
             "node 4 relayed by zone owner 6 and observed by monitors 9 and 10");
  }

  void step_clean_outcome() {
    const auto* flagged = find([](const TraceRecord& x) {
      if (!is_ev(x, "observed") && !is_ev(x, "block")) return false;
      NodeId s = x.at("subject").get<NodeId>();
      return s != kTarget;
    });
    const auto* dead = find([](const TraceRecord& x) { return is_ev(x, "deactivated"); });
    bool ok = flagged == nullptr && dead == nullptr;
    add("no collateral damage", ok ? StepState::Pass : StepState::Fail,
        ok ? "no clean node flagged, network alive at the end of the run"
           : (flagged != nullptr ? "clean node flagged: " + flagged->dump()
                                 : "network deactivated"));
  }
};

}  // namespace

CaseStudyReport run_casestudy() {
  ScenarioConfig cfg = load_scenario(casestudy_scenario_text(), "casestudy");
  CaseStudyReport report;
  report.result = run_simulation(cfg);
  Checker checker{report.result.trace, cfg, {}, -1};
  checker.run();
  report.steps = std::move(checker.steps);
  return report;
}

}  // namespace segnet
