#include "segnet/replay.hpp"

#include <deque>
#include <map>
#include <set>

#include "segnet/detection.hpp"
#include "segnet/protocol.hpp"

namespace segnet {

namespace {

constexpr std::size_t kMaxExamples = 25;

struct TimedId {
  SimTime t = 0;
  NodeId id = 0;
};

struct TimedWarning {
  SimTime t = 0;
  NodeId issuer = 0;
  NodeId subject = 0;
};

void prune(std::deque<SimTime>& q, SimTime now, SimTime window) {
  while (!q.empty() && q.front() + window <= now) q.pop_front();
}

void prune(std::deque<TimedId>& q, SimTime now, SimTime window) {
  while (!q.empty() && q.front().t + window <= now) q.pop_front();
}

void prune(std::deque<TimedWarning>& q, SimTime now, SimTime window) {
  while (!q.empty() && q.front().t + window <= now) q.pop_front();
}

class Replayer {
 public:
  explicit Replayer(const ScenarioConfig& cfg) : cfg_(cfg) {}

  ReplayReport run(const std::vector<TraceRecord>& trace) {
    for (const auto& rec : trace) {
      ++report_.records_processed;
      process(rec);
    }
    return report_;
  }

 private:
  void diverge(const TraceRecord& rec, const std::string& what) {
    ++report_.divergence_count;
    if (report_.divergences.size() < kMaxExamples) {
      report_.divergences.push_back("t=" + format_time(rec.at("t").get<SimTime>()) +
                                    " seq=" + std::to_string(rec.at("seq").get<Seq>()) + " " +
                                    rec.at("ev").get<std::string>() + ": " + what);
    }
  }

  void check(const TraceRecord& rec, bool cond, const std::string& what) {
    ++report_.verdicts_checked;
    if (!cond) diverge(rec, what);
  }

  bool usable(NodeId id) const { return dead_.count(id) == 0 && blocked_.count(id) == 0; }

  NodeId owner_of(NodeId sn) const {
    auto it = owner_.find(sn);
    return it == owner_.end() ? 0 : it->second;
  }

  void process(const TraceRecord& rec) {
    const std::string ev = rec.at("ev").get<std::string>();
    const SimTime t = rec.at("t").get<SimTime>();
    if (ev == "run_header") {
      if (rec.at("config_digest").get<std::uint64_t>() != cfg_.config_digest) {
        report_.digest_mismatch = true;
      }
    } else if (ev == "election") {
      on_election(rec);
    } else if (ev == "window_rollover") {
      wake_counts_.clear();
    } else if (ev == "death") {
      dead_.insert(rec.at("node").get<NodeId>());
    } else if (ev == "msg") {
      on_msg(rec, t);
    } else if (ev == "stamp") {
      on_stamp(rec, t);
    } else if (ev == "observe") {
      on_observe(rec, t);
    } else if (ev == "decision") {
      on_decision(rec, t);
    } else if (ev == "zo_watchdog") {
      on_zo_watchdog(rec, t);
    } else if (ev == "block") {
      on_block(rec, t);
      blocked_.insert(rec.at("subject").get<NodeId>());
    }
    // duty, join, observed, flow_anomaly, deactivated, election_failed carry
    // no verdicts to re-derive.
  }

  void on_election(const TraceRecord& rec) {
    gn_ = rec.at("gn").get<NodeId>();
    NodeId new_co = rec.at("co").get<NodeId>();
    if (new_co != co_) {
      co_warnings_.clear();
      co_reporters_.clear();
      zo_false_.clear();
      mn_lone_.clear();
      gn_reporters_.clear();
    }
    co_ = new_co;
    mns_ = rec.at("mns").get<std::vector<NodeId>>();
    zones_.clear();
    owner_.clear();
    for (const auto& [key, members] : rec.at("zones").items()) {
      NodeId zo = static_cast<NodeId>(std::stoul(key));
      zones_[zo] = {};
      for (const auto& m : members) {
        NodeId sn = m.get<NodeId>();
        zones_[zo].insert(sn);
        owner_[sn] = zo;
      }
    }
    // Ownership moved; coin bookkeeping starts over.
    wake_counts_.clear();
  }

  void on_msg(const TraceRecord& rec, SimTime t) {
    if (rec.at("result").get<std::string>() != "delivered") return;
    const std::string kind = rec.at("kind").get<std::string>();
    if (kind == "wakeup_coin") {
      NodeId dst = rec.at("dst").get<NodeId>();
      NodeId issuer = rec.at("coin_issuer").get<NodeId>();
      bool solicited = rec.at("solicited").get<bool>();
      NodeId owner = owner_of(dst);
      if (rec.value("forged", false)) {
        check(rec, !solicited, "forged coin marked solicited");
      } else if (solicited) {
        check(rec, issuer == owner, "solicited coin not issued by the zone owner");
      }
      // The owner observes the wake-up only when the destination can react.
      if (owner != 0 && usable(dst)) ++wake_counts_[{owner, dst}];
    } else if (kind == "data_packet") {
      if (rec.at("dst").get<NodeId>() == co_ && co_ != 0) {
        PktId pkt = rec.at("pkt").get<PktId>();
        pkt_status_[pkt] = rec.at("status").get<int>();
        if (rec.at("stamped").get<bool>()) {
          pkt_stamped_by_[pkt] = rec.at("stamped_by").get<NodeId>();
        }
      }
    } else if (kind == "warning_ticket") {
      NodeId dst = rec.at("dst").get<NodeId>();
      NodeId issuer = rec.at("issuer").get<NodeId>();
      NodeId subject = rec.at("subject").get<NodeId>();
      const std::string reason = rec.at("ticket_reason").get<std::string>();
      if (reason == "packet_count_anomaly" && dst == co_ && co_ != 0) {
        pkt_tickets_[rec.at("subject_pkt").get<PktId>()].insert(issuer);
        co_warnings_.push_back({t, issuer, subject});
        co_reporters_.push_back({t, issuer});
      } else if (reason == "zo_false_detection" && dst == co_ && co_ != 0) {
        zo_ticket_seen_[subject] = t;
      } else if (reason == "co_flow_anomaly" && dst == gn_ && gn_ != 0) {
        gn_reporters_.push_back({t, issuer});
      }
    }
  }

  void on_stamp(const TraceRecord& rec, SimTime t) {
    NodeId zo = rec.at("zo").get<NodeId>();
    NodeId origin = rec.at("origin").get<NodeId>();
    bool sleep_hit = in_sleep_window(cfg_.duty, t);
    check(rec, sleep_hit == rec.at("sleep_hit").get<bool>(), "sleep window flag mismatch");
    int wake = 0;
    auto it = wake_counts_.find({zo, origin});
    if (it != wake_counts_.end()) wake = it->second;
    check(rec, wake == rec.at("wake_count").get<int>(),
          "wake count mismatch: replay " + std::to_string(wake) + " vs recorded " +
              std::to_string(rec.at("wake_count").get<int>()));
    auto zit = zones_.find(zo);
    bool unknown = zit == zones_.end() || zit->second.count(origin) == 0;
    check(rec, unknown == rec.at("unknown_origin").get<bool>(), "zone membership flag mismatch");
    if (rec.value("compromised", false)) {
      ++report_.skipped_compromised;
      return;
    }
    int status = anomaly_status(sleep_hit, wake, cfg_.thresholds.th_token, unknown);
    check(rec, status == rec.at("status").get<int>(),
          "anomaly status mismatch: replay " + std::to_string(status) + " vs recorded " +
              std::to_string(rec.at("status").get<int>()));
  }

  void on_observe(const TraceRecord& rec, SimTime t) {
    NodeId mn = rec.at("mn").get<NodeId>();
    NodeId origin = rec.at("origin").get<NodeId>();
    auto& window = observed_[{mn, origin}];
    prune(window, t, cfg_.thresholds.t_interval);
    window.push_back(t);
    int count = static_cast<int>(window.size());
    check(rec, count == rec.at("count").get<int>(),
          "observation count mismatch: replay " + std::to_string(count) + " vs recorded " +
              std::to_string(rec.at("count").get<int>()));
    if (rec.value("compromised", false)) {
      ++report_.skipped_compromised;
      return;
    }
    bool ticket = confirm_intrusion(count, cfg_.thresholds, rec.at("reported_energy").get<Energy>());
    check(rec, ticket == rec.at("ticket").get<bool>(), "confirmation verdict mismatch");
  }

  void on_decision(const TraceRecord& rec, SimTime t) {
    PktId pkt = rec.at("pkt").get<PktId>();
    int status = 0;
    auto sit = pkt_status_.find(pkt);
    if (sit != pkt_status_.end()) status = sit->second;
    check(rec, status == rec.at("status").get<int>(), "decision status mismatch");
    std::set<NodeId> issuers;
    auto tit = pkt_tickets_.find(pkt);
    if (tit != pkt_tickets_.end()) issuers = tit->second;
    std::vector<NodeId> ticket_list = rec.at("tickets").get<std::vector<NodeId>>();
    std::set<NodeId> recorded(ticket_list.begin(), ticket_list.end());
    check(rec, issuers == recorded, "ticket issuer set mismatch");
    DecisionAction action = decide_action(status, static_cast<int>(issuers.size()));
    check(rec, std::string(to_string(action)) == rec.at("action").get<std::string>(),
          "decision action mismatch");
    if (rec.at("action").get<std::string>() == "drop_erroneous") {
      auto pit = pkt_stamped_by_.find(pkt);
      if (pit != pkt_stamped_by_.end()) zo_false_[pit->second].push_back(t);
    }
    if (issuers.size() == 1) mn_lone_[*issuers.begin()].push_back(t);
  }

  void on_zo_watchdog(const TraceRecord& rec, SimTime t) {
    NodeId zo = rec.at("zo").get<NodeId>();
    auto& q = zo_false_[zo];
    prune(q, t, cfg_.thresholds.t_interval);
    int count = static_cast<int>(q.size());
    check(rec, count == rec.at("count").get<int>(), "false-detection count mismatch");
    check(rec, watchdog_zo_fires(count, cfg_.thresholds.false_detection_threshold),
          "watchdog fired below threshold");
  }

  void on_block(const TraceRecord& rec, SimTime t) {
    NodeId subject = rec.at("subject").get<NodeId>();
    const std::string rule = rec.at("rule").get<std::string>();
    if (rule == "warning_threshold") {
      prune(co_warnings_, t, cfg_.thresholds.t_interval);
      int wc = 0;
      std::set<NodeId> issuers;
      for (const auto& w : co_warnings_) {
        if (w.subject == subject) {
          ++wc;
          issuers.insert(w.issuer);
        }
      }
      check(rec,
            should_block(wc, static_cast<int>(issuers.size()),
                         cfg_.thresholds.warning_block_threshold),
            "warning-threshold block not justified: count " + std::to_string(wc) + ", issuers " +
                std::to_string(issuers.size()));
    } else if (rule == "false_detection") {
      auto it = zo_ticket_seen_.find(subject);
      check(rec, it != zo_ticket_seen_.end() && it->second == t,
            "false-detection block without a matching ticket");
    } else if (rule == "flow_anomaly") {
      prune(gn_reporters_, t, cfg_.thresholds.t_interval);
      std::set<NodeId> distinct;
      for (const auto& r : gn_reporters_) distinct.insert(r.id);
      check(rec, distinct.size() >= 2,
            "flow-anomaly block with fewer than two reporters");
    } else if (rule == "uncorroborated_tickets") {
      prune(co_reporters_, t, cfg_.thresholds.t_interval);
      std::set<NodeId> distinct;
      for (const auto& r : co_reporters_) distinct.insert(r.id);
      int total = 0;
      for (NodeId mn : mns_) {
        if (usable(mn)) ++total;
      }
      auto& q = mn_lone_[subject];
      prune(q, t, cfg_.thresholds.t_interval);
      bool justified =
          mn_ratio_exceeded(static_cast<int>(distinct.size()), total,
                            cfg_.thresholds.ticket_rate_milli) &&
          static_cast<int>(q.size()) > cfg_.thresholds.false_detection_threshold;
      check(rec, justified, "uncorroborated-ticket block not justified");
    } else {
      diverge(rec, "unknown block rule '" + rule + "'");
    }
  }

  const ScenarioConfig& cfg_;
  ReplayReport report_;

  std::set<NodeId> dead_, blocked_;
  NodeId gn_ = 0;
  NodeId co_ = 0;
  std::vector<NodeId> mns_;
  std::map<NodeId, std::set<NodeId>> zones_;
  std::map<NodeId, NodeId> owner_;
  std::map<std::pair<NodeId, NodeId>, int> wake_counts_;
  std::map<std::pair<NodeId, NodeId>, std::deque<SimTime>> observed_;
  std::map<PktId, int> pkt_status_;
  std::map<PktId, NodeId> pkt_stamped_by_;
  std::map<PktId, std::set<NodeId>> pkt_tickets_;
  std::deque<TimedWarning> co_warnings_;
  std::deque<TimedId> co_reporters_;
  std::map<NodeId, std::deque<SimTime>> zo_false_;
  std::map<NodeId, std::deque<SimTime>> mn_lone_;
  std::deque<TimedId> gn_reporters_;
  std::map<NodeId, SimTime> zo_ticket_seen_;
};

}  // namespace

ReplayReport replay_trace(const std::vector<TraceRecord>& trace, const ScenarioConfig& cfg) {
  Replayer r(cfg);
  return r.run(trace);
}

}  // namespace segnet
