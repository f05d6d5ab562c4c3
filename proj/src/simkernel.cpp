#include "segnet/simkernel.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "segnet/detection.hpp"
#include "segnet/protocol.hpp"

namespace segnet {

namespace {

enum class EvKind {
  MessageDelivery,
  DutySleep,
  DutyWake,
  WindowRollover,
  QueryRound,
  Reconfigure,
  AttackerStep,
  CompromiseStep,
  NodeJoin,
  CoDecision,
};

struct Event {
  SimTime t = 0;
  Seq seq = 0;
  EvKind kind = EvKind::MessageDelivery;
  Message msg;
  NodeId node = 0;
  PktId pkt = 0;
  std::int64_t index = 0;
  bool watchdog = false;
};

// Min-heap on (t, seq): seq breaks ties in scheduling order, which makes the
// whole run a deterministic function of the config.
struct LaterEvent {
  bool operator()(const Event& a, const Event& b) const {
    if (a.t != b.t) return a.t > b.t;
    return a.seq > b.seq;
  }
};

const char* modality_for(NodeId id) {
  static const char* const kinds[] = {"temperature", "humidity", "light", "pressure"};
  return kinds[id % 4];
}

class Simulator {
 public:
  explicit Simulator(const ScenarioConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  RunResult run() {
    net_ = deploy(cfg_.nodes, cfg_.radio_range);
    for (auto& [id, node] : net_.nodes) ledger_.register_node(node, 0);
    header();
    try {
      init_protocol();
    } catch (const ElectionError& e) {
      election_failed_ = true;
      election_error_ = e.what();
      auto& r = emit(0, "election_failed");
      r["error"] = e.what();
      return finish();
    }
    schedule_recurring();
    loop();
    return finish();
  }

 private:
  // ---- trace helpers ----

  TraceRecord& emit(SimTime t, const char* ev) {
    trace_.emplace_back();
    TraceRecord& r = trace_.back();
    r["t"] = t;
    r["seq"] = next_trace_seq_++;
    r["ev"] = ev;
    return r;
  }

  TraceRecord& msg_record(const Message& m, SimTime t, const char* result, const char* reason) {
    TraceRecord& r = emit(t, "msg");
    r["kind"] = message_kind(m);
    r["src"] = m.src;
    r["dst"] = m.dst;
    r["sent_at"] = m.sent_at;
    r["result"] = result;
    if (reason != nullptr) r["reason"] = reason;
    if (m.src == kAttackerId) r["external"] = true;
    if (m.forged) r["forged"] = true;
    if (m.compromised) r["compromised"] = true;
    if (const auto* er = std::get_if<EnergyReportMsg>(&m.body)) {
      r["energy"] = er->energy;
    } else if (const auto* q = std::get_if<SensingQuery>(&m.body)) {
      r["target_zone"] = q->target_zone;
    } else if (const auto* c = std::get_if<WakeUpCoin>(&m.body)) {
      r["coin_id"] = c->coin_id;
      r["coin_issuer"] = c->issuer;
    } else if (const auto* d = std::get_if<DataPacketMsg>(&m.body)) {
      const Packet& p = d->packet;
      r["pkt"] = p.pkt_id;
      r["origin"] = p.origin;
      r["status"] = p.status;
      r["stamped"] = p.stamped;
      if (p.stamped) r["stamped_by"] = p.stamped_by;
      r["payload"] = p.payload_kind;
      r["reported_energy"] = p.reported_energy;
      if (p.forged_induced) r["forged_induced"] = true;
    } else if (const auto* w = std::get_if<WarningTicketMsg>(&m.body)) {
      const Ticket& tk = w->ticket;
      r["issuer"] = tk.issuer;
      r["subject"] = tk.subject_node;
      r["subject_pkt"] = tk.subject_packet;
      r["ticket_reason"] = to_string(tk.reason);
    } else if (const auto* b = std::get_if<BlockNotice>(&m.body)) {
      r["subject"] = b->subject;
    }
    return r;
  }

  void drop_message(const Message& m, SimTime t, const char* reason) {
    msg_record(m, t, "dropped", reason);
  }

  void header() {
    auto& r = emit(0, "run_header");
    r["scenario"] = cfg_.name;
    r["seed"] = cfg_.seed;
    r["detection"] = cfg_.detection_enabled;
    r["config_digest"] = cfg_.config_digest;
    std::vector<NodeId> ids;
    for (const auto& spec : cfg_.nodes) ids.push_back(spec.id);
    r["nodes"] = ids;
    r["defaults"] = cfg_.defaults_applied;
  }

  void election_record(const char* trigger, const std::vector<std::string>& warnings) {
    auto& r = emit(now_, "election");
    r["trigger"] = trigger;
    r["gn"] = gn_;
    r["co"] = roles_.co;
    r["mns"] = roles_.mns;
    r["zos"] = roles_.zos;
    nlohmann::ordered_json zones = nlohmann::ordered_json::object();
    for (NodeId zo : roles_.zos) {
      auto it = roles_.zones.find(zo);
      std::vector<NodeId> members;
      if (it != roles_.zones.end()) members.assign(it->second.begin(), it->second.end());
      zones[std::to_string(zo)] = members;
    }
    r["zones"] = zones;
    r["unzoned"] = std::vector<NodeId>(roles_.unreachable_sns.begin(),
                                       roles_.unreachable_sns.end());
    if (!warnings.empty()) r["warnings"] = warnings;
  }

  // ---- energy helpers ----

  void on_death(NodeId id) {
    auto& r = emit(now_, "death");
    r["node"] = id;
    parked_.erase(id);
    check_deactivation();
  }

  void charge_checked(NodeId id, Activity a) {
    if (ledger_.charge(net_, cfg_.energy, id, a, now_)) on_death(id);
  }

  void accrue_checked(NodeId id) {
    if (ledger_.accrue(net_, cfg_.energy, id, now_)) on_death(id);
  }

  void accrue_all_checked() {
    std::vector<NodeId> died;
    ledger_.accrue_all(net_, cfg_.energy, now_, &died);
    for (NodeId id : died) on_death(id);
  }

  void check_deactivation() {
    if (deactivated_) return;
    if (!below_lifetime_threshold(net_, cfg_.thresholds.lifetime_milli)) return;
    deactivated_ = true;
    deactivated_at_ = now_;
    halted_ = true;
    auto& r = emit(now_, "deactivated");
    r["alive"] = alive_count(net_);
    r["total"] = static_cast<std::int64_t>(net_.nodes.size());
  }

  void set_power(NodeId id, PowerMode mode) {
    NodeState& n = net_.at(id);
    if (!n.alive() || n.power == mode) return;
    accrue_checked(id);
    if (!net_.at(id).alive()) return;
    net_.at(id).power = mode;
  }

  // ---- scheduling ----

  void push_event(Event ev) {
    ev.seq = next_event_seq_++;
    queue_.push(std::move(ev));
  }

  void schedule_delivery(Message m) {
    Event ev;
    ev.t = now_ + cfg_.hop_latency;
    ev.kind = EvKind::MessageDelivery;
    ev.msg = std::move(m);
    push_event(std::move(ev));
  }

  // Charges the sender and puts the message on the air. A node that dies
  // mid-transmission still gets its last message out.
  void send_message(Message m) {
    m.sent_at = now_;
    if (m.src != kAttackerId) {
      if (!net_.contains(m.src) || !net_.at(m.src).usable()) return;
      charge_checked(m.src, Activity::Tx);
    }
    schedule_delivery(std::move(m));
  }

  // One transmission, many receivers: every usable node in radio range.
  void broadcast(NodeId src, const MessageBody& body) {
    if (!net_.at(src).usable()) return;
    std::vector<NodeId> dsts;
    for (const auto& [id, node] : net_.nodes) {
      if (id != src && node.usable() && in_range(net_, src, id)) dsts.push_back(id);
    }
    if (dsts.empty()) return;
    charge_checked(src, Activity::Tx);
    for (NodeId d : dsts) {
      Message m{src, d, now_, false, false, body};
      schedule_delivery(std::move(m));
    }
  }

  void schedule_recurring() {
    // Joins go in first: a node joining exactly at a reconfiguration instant
    // participates in that election.
    for (const auto& spec : cfg_.nodes) {
      if (spec.join_time > 0 && spec.join_time <= cfg_.duration) {
        Event ev;
        ev.t = spec.join_time;
        ev.kind = EvKind::NodeJoin;
        ev.node = spec.id;
        push_event(std::move(ev));
      }
    }
    std::int64_t index = 0;
    for (SimTime t = cfg_.thresholds.t_interval; t <= cfg_.duration;
         t += cfg_.thresholds.t_interval) {
      Event ev;
      ev.t = t;
      ev.kind = EvKind::WindowRollover;
      ev.index = ++index;
      push_event(std::move(ev));
    }
    for (SimTime p = 0; p <= cfg_.duration; p += cfg_.duty.period) {
      SimTime ts = p + cfg_.duty.sleep_start;
      if (ts > 0 && ts <= cfg_.duration) {
        Event ev;
        ev.t = ts;
        ev.kind = EvKind::DutySleep;
        push_event(std::move(ev));
      }
      SimTime tw = p + cfg_.duty.sleep_end;
      if (tw > 0 && tw <= cfg_.duration) {
        Event ev;
        ev.t = tw;
        ev.kind = EvKind::DutyWake;
        push_event(std::move(ev));
      }
    }
    for (SimTime p = 0; p <= cfg_.duration; p += cfg_.duty.period) {
      for (SimTime phase : cfg_.query_phases) {
        SimTime t = p + phase;
        if (t > 0 && t <= cfg_.duration) {
          Event ev;
          ev.t = t;
          ev.kind = EvKind::QueryRound;
          push_event(std::move(ev));
        }
      }
    }
    for (SimTime t = cfg_.reconfigure_interval; t < cfg_.duration;
         t += cfg_.reconfigure_interval) {
      Event ev;
      ev.t = t;
      ev.kind = EvKind::Reconfigure;
      push_event(std::move(ev));
    }
    if (cfg_.attacker.enabled) {
      SimTime end = std::min(cfg_.attacker.window_end, cfg_.duration);
      for (SimTime t = cfg_.attacker.window_start; t < end; t += kTimeScale) {
        Event ev;
        ev.t = t;
        ev.kind = EvKind::AttackerStep;
        push_event(std::move(ev));
      }
    }
    if (cfg_.compromised.kind == CompromiseKind::CoFlowFlood) {
      for (SimTime t = cfg_.compromised.start; t < cfg_.duration; t += kTimeScale) {
        Event ev;
        ev.t = t;
        ev.kind = EvKind::CompromiseStep;
        push_event(std::move(ev));
      }
    }
  }

  void loop() {
    while (!queue_.empty()) {
      Event ev = queue_.top();
      queue_.pop();
      if (halted_) {
        // In-flight traffic is voided when the network deactivates.
        if (ev.kind == EvKind::MessageDelivery) drop_message(ev.msg, deactivated_at_, "deactivated");
        continue;
      }
      if (ev.t > cfg_.duration) {
        if (ev.kind == EvKind::MessageDelivery) drop_message(ev.msg, cfg_.duration, "run_end");
        continue;
      }
      now_ = ev.t;
      dispatch(ev);
    }
    if (!halted_) now_ = cfg_.duration;
    accrue_all_checked();
    sample_series();
  }

  void dispatch(const Event& ev) {
    switch (ev.kind) {
      case EvKind::MessageDelivery: deliver(ev.msg); break;
      case EvKind::DutySleep: duty_boundary(true); break;
      case EvKind::DutyWake: duty_boundary(false); break;
      case EvKind::WindowRollover: window_rollover(ev.index); break;
      case EvKind::QueryRound: query_round(); break;
      case EvKind::Reconfigure: run_reconfigure(ev.watchdog); break;
      case EvKind::AttackerStep: attacker_step(); break;
      case EvKind::CompromiseStep: compromise_step(); break;
      case EvKind::NodeJoin: node_join(ev.node); break;
      case EvKind::CoDecision: co_decision(ev.pkt); break;
    }
  }

  // ---- initialization ----

  void init_protocol() {
    for (const auto& [id, node] : net_.nodes) {
      if (node.desig == Designation::GN) gn_ = id;
    }
    auto neigh = discover_neighbors(net_, gn_, cfg_.discovery_timer, cfg_.hop_latency);
    // Hello broadcast, acks, then per-neighbor energy interrogation. These
    // handshakes run inside the discovery timer and are traced at t=0.
    if (!neigh.empty()) charge_checked(gn_, Activity::Tx);
    for (NodeId n : neigh) {
      if (!net_.at(n).alive()) continue;
      charge_checked(n, Activity::Rx);
      msg_record(Message{gn_, n, 0, false, false, Hello{}}, 0, "delivered", nullptr);
    }
    for (NodeId n : neigh) {
      if (!net_.at(n).alive() || !net_.at(gn_).alive()) continue;
      charge_checked(n, Activity::Tx);
      charge_checked(gn_, Activity::Rx);
      msg_record(Message{n, gn_, 0, false, false, Ack{}}, 0, "delivered", nullptr);
    }
    for (NodeId n : neigh) {
      if (!net_.at(n).alive() || !net_.at(gn_).alive()) continue;
      charge_checked(gn_, Activity::Tx);
      charge_checked(n, Activity::Rx);
      msg_record(Message{gn_, n, 0, false, false, EnergyQuery{}}, 0, "delivered", nullptr);
      if (!net_.at(n).alive()) continue;
      Energy e = net_.at(n).energy;
      charge_checked(n, Activity::Tx);
      charge_checked(gn_, Activity::Rx);
      msg_record(Message{n, gn_, 0, false, false, EnergyReportMsg{e}}, 0, "delivered", nullptr);
    }
    // Category assignment covers the whole deployment; Simple nodes become
    // sensing nodes immediately.
    std::vector<std::pair<NodeId, Energy>> members;
    for (const auto& [id, node] : net_.nodes) {
      if (id != gn_) members.push_back({id, node.energy});
    }
    auto cls = classify_nodes(net_.at(gn_).energy, members, cfg_.mu_milli);
    for (NodeId id : cls.intelligent) net_.at(id).category = NodeCategory::Intelligent;
    for (NodeId id : cls.simple) {
      net_.at(id).category = NodeCategory::Simple;
      net_.at(id).desig = Designation::SN;
    }
    ElectionParams params{gn_, cfg_.k_mn, cfg_.z_zo, cfg_.discovery_timer, cfg_.hop_latency};
    std::vector<std::string> warnings;
    roles_ = elect_roles(net_, params, rng_, true, &warnings, false);
    // CO introduces itself to the cluster; members ack.
    if (!roles_.cluster_members.empty() && net_.at(roles_.co).alive()) {
      charge_checked(roles_.co, Activity::Tx);
      for (NodeId m : roles_.cluster_members) {
        if (!net_.at(m).alive()) continue;
        charge_checked(m, Activity::Rx);
        msg_record(Message{roles_.co, m, 0, false, false, Hello{}}, 0, "delivered", nullptr);
      }
      for (NodeId m : roles_.cluster_members) {
        if (!net_.at(m).alive() || !net_.at(roles_.co).alive()) continue;
        charge_checked(m, Activity::Tx);
        charge_checked(roles_.co, Activity::Rx);
        msg_record(Message{m, roles_.co, 0, false, false, Ack{}}, 0, "delivered", nullptr);
      }
    }
    election_record("init", warnings);
    apply_duty_power();
    sample_series();
  }

  void apply_duty_power() {
    for (auto& [id, node] : net_.nodes) {
      if (!node.usable()) continue;
      if (node.desig == Designation::SN && node.category == NodeCategory::Simple) {
        bool asleep = parked_.count(id) != 0 || in_sleep_window(cfg_.duty, now_);
        set_power(id, asleep ? PowerMode::Asleep : PowerMode::Awake);
      } else if (parked_.count(id) == 0) {
        set_power(id, PowerMode::Awake);
      }
    }
  }

  // ---- recurring events ----

  void duty_boundary(bool to_sleep) {
    auto& r = emit(now_, "duty");
    r["mode"] = to_sleep ? "sleep" : "wake";
    for (auto& [id, node] : net_.nodes) {
      if (!node.usable()) continue;
      if (node.desig != Designation::SN || node.category != NodeCategory::Simple) continue;
      if (parked_.count(id)) continue;
      set_power(id, to_sleep ? PowerMode::Asleep : PowerMode::Awake);
    }
  }

  void window_rollover(std::int64_t index) {
    // Evaluate the window that just closed before the history absorbs it.
    if (cfg_.detection_enabled && roles_.co != 0 && net_.contains(roles_.co) &&
        net_.at(roles_.co).usable()) {
      if (co_flow_abnormal(window_volume_, volume_history_, cfg_.thresholds.flow_factor_milli)) {
        auto& r = emit(now_, "flow_anomaly");
        r["co"] = roles_.co;
        r["volume"] = window_volume_;
        r["history"] = volume_history_;
        for (NodeId mn : roles_.mns) {
          const NodeState& m = net_.at(mn);
          if (!m.usable() || !m.detection_enabled) continue;
          Ticket tk{mn, roles_.co, 0, now_, TicketReason::CoFlowAnomaly};
          send_message(Message{mn, gn_, now_, false, false, WarningTicketMsg{tk}});
        }
      }
    }
    volume_history_.push_back(window_volume_);
    if (volume_history_.size() > 4) volume_history_.erase(volume_history_.begin());
    window_volume_ = 0;
    for (auto& [zo, ledger] : coin_ledgers_) ledger.rollover();
    auto& r = emit(now_, "window_rollover");
    r["index"] = index;
    sample_series();
  }

  void sample_series() {
    accrue_all_checked();
    if (!series_.empty() && series_.back().t == now_) return;
    for (const auto& [id, node] : net_.nodes) series_.push_back({now_, id, node.energy});
  }

  void query_round() {
    if (roles_.co == 0 || !net_.at(gn_).usable() || !net_.at(roles_.co).usable()) return;
    for (NodeId zo : roles_.zos) {
      if (!net_.at(zo).usable()) continue;
      auto it = roles_.zones.find(zo);
      if (it == roles_.zones.end() || it->second.empty()) continue;
      send_message(Message{gn_, roles_.co, now_, false, false, SensingQuery{zo}});
    }
  }

  void attacker_step() {
    attacker_acc_ += cfg_.attacker.rate_milli;
    std::int64_t n = attacker_acc_ / kMilli;
    attacker_acc_ %= kMilli;
    for (std::int64_t i = 0; i < n; ++i) {
      for (NodeId target : cfg_.attacker.targets) {
        if (!net_.contains(target)) continue;
        Message m{kAttackerId, target, now_, true, false,
                  WakeUpCoin{next_coin_++, kAttackerId}};
        send_message(std::move(m));
      }
    }
  }

  void compromise_step() {
    NodeId c = cfg_.compromised.node;
    if (roles_.co != c || !net_.contains(c) || !net_.at(c).usable()) return;
    flood_acc_ += cfg_.compromised.rate_milli;
    std::int64_t n = flood_acc_ / kMilli;
    flood_acc_ %= kMilli;
    for (std::int64_t i = 0; i < n; ++i) {
      Packet p;
      p.pkt_id = next_pkt_++;
      p.origin = c;
      p.created_at = now_;
      p.reported_energy = net_.at(c).energy;
      forward_to_gn(std::move(p), true);
    }
  }

  void node_join(NodeId id) {
    const NodeSpec* spec = nullptr;
    for (const auto& s : cfg_.nodes) {
      if (s.id == id) spec = &s;
    }
    if (spec == nullptr || net_.contains(id)) return;
    NodeState node = instantiate_node(*spec, now_);
    if (node.category == NodeCategory::Simple) node.desig = Designation::SN;
    net_.nodes.emplace(id, node);
    ledger_.register_node(net_.at(id), now_);
    auto& r = emit(now_, "join");
    r["node"] = id;
    r["category"] = to_string(node.category);
    // The gateway parks the newcomer until the next reconfiguration.
    if (net_.at(gn_).usable()) {
      send_message(Message{gn_, id, now_, false, false, SleepSignal{}});
    }
  }

  void run_reconfigure(bool watchdog) {
    reconfig_pending_ = false;
    accrue_all_checked();
    if (halted_) return;
    NodeId old_co = roles_.co;
    std::vector<std::string> warnings;
    if (!net_.at(gn_).usable()) {
      roles_ = RoleAssignment{};
      roles_.gn = gn_;
      warnings.push_back("gateway unavailable; network headless");
    } else {
      ElectionParams params{gn_, cfg_.k_mn, cfg_.z_zo, cfg_.discovery_timer, cfg_.hop_latency};
      roles_ = reconfigure(net_, params, rng_, &warnings);
    }
    // Zone bookkeeping follows ownership; in-flight verdicts do not survive
    // a role change.
    coin_ledgers_.clear();
    pending_.clear();
    if (roles_.co != old_co) {
      co_ledger_ = CoLedger{};
      volume_history_.clear();
      window_volume_ = 0;
      gn_flow_reporters_.clear();
    }
    parked_.clear();
    apply_duty_power();
    election_record(watchdog ? "watchdog" : "periodic", warnings);
  }

  void schedule_watchdog_reconfigure() {
    if (reconfig_pending_) return;
    reconfig_pending_ = true;
    Event ev;
    ev.t = now_;
    ev.kind = EvKind::Reconfigure;
    ev.watchdog = true;
    push_event(std::move(ev));
  }

  // ---- message delivery and reactions ----

  void deliver(const Message& m) {
    // A blocked sender's transmissions are ignored network-wide.
    if (m.src != kAttackerId && net_.contains(m.src) && net_.at(m.src).blocked()) {
      drop_message(m, now_, "src_blocked");
      return;
    }
    if (!net_.contains(m.dst)) {
      drop_message(m, now_, "dst_missing");
      return;
    }
    NodeState& dst = net_.at(m.dst);
    if (!dst.alive()) {
      drop_message(m, now_, "dst_dead");
      return;
    }
    // The radio front end is billed even while asleep or blocked.
    bool died = ledger_.charge(net_, cfg_.energy, m.dst, Activity::Rx, now_);
    TraceRecord& r = msg_record(m, now_, "delivered", nullptr);
    // Solicited is a property of the coin itself, recorded even when the
    // receiver cannot react (blocked, or killed by the rx charge).
    if (const auto* coin = std::get_if<WakeUpCoin>(&m.body)) {
      NodeId owner = roles_.zone_owner(m.dst);
      r["solicited"] = owner != 0 && coin_ledgers_[owner].is_issued(m.dst, coin->coin_id);
    }
    if (died) {
      on_death(m.dst);
      return;
    }
    if (net_.at(m.dst).blocked()) return;  // quarantined nodes never react
    react(m, r);
  }

  void react(const Message& m, TraceRecord& r) {
    if (const auto* q = std::get_if<SensingQuery>(&m.body)) {
      if (m.dst == roles_.co && roles_.co != 0) {
        // Relay toward the zone owner.
        if (net_.at(m.dst).usable() && net_.contains(q->target_zone) &&
            net_.at(q->target_zone).usable() && roles_.is_zo(q->target_zone)) {
          send_message(Message{m.dst, q->target_zone, now_, false, false, m.body});
        }
      } else if (roles_.is_zo(m.dst)) {
        zone_query(m.dst);
      }
    } else if (std::get_if<WakeUpCoin>(&m.body) != nullptr) {
      coin_delivered(m, r);
    } else if (std::get_if<DataPacketMsg>(&m.body) != nullptr) {
      data_packet_delivered(m);
    } else if (std::get_if<WarningTicketMsg>(&m.body) != nullptr) {
      ticket_delivered(m);
    } else if (std::get_if<SleepSignal>(&m.body) != nullptr) {
      sleep_signal_delivered(m.dst);
    }
    // Hello, Ack, EnergyQuery, EnergyReport, BlockNotice need no reaction here.
  }

  void zone_query(NodeId zo) {
    auto it = roles_.zones.find(zo);
    if (it == roles_.zones.end()) return;
    for (NodeId sn : it->second) {
      if (!net_.contains(sn) || !net_.at(sn).usable()) continue;
      CoinId coin = next_coin_++;
      coin_ledgers_[zo].note_issued(sn, coin);
      send_message(Message{zo, sn, now_, false, false, WakeUpCoin{coin, zo}});
    }
  }

  void coin_delivered(const Message& m, TraceRecord& r) {
    NodeId sn = m.dst;
    NodeId owner = roles_.zone_owner(sn);
    bool solicited = r.at("solicited").get<bool>();
    NodeState& node = net_.at(sn);
    if (!node.usable()) return;
    // The owner observes the wake-up regardless of whether a reply makes it
    // back; the wake itself is the event of interest.
    if (owner != 0) coin_ledgers_[owner].count_wake(sn, solicited);
    parked_.erase(sn);
    if (node.power == PowerMode::Asleep) set_power(sn, PowerMode::Awake);
    if (!net_.at(sn).alive()) return;
    bool died = ledger_.charge(net_, cfg_.energy, sn, Activity::Sense, now_);
    if (died) {
      on_death(sn);
      return;
    }
    if (owner == 0) {
      r["no_route"] = true;
      return;
    }
    Packet p;
    p.pkt_id = next_pkt_++;
    p.origin = sn;
    p.created_at = now_;
    p.reported_energy = net_.at(sn).energy;
    p.forged_induced = m.forged;
    p.payload_kind = modality_for(sn);
    send_message(Message{sn, owner, now_, false, false, DataPacketMsg{std::move(p)}});
  }

  void data_packet_delivered(const Message& m) {
    Packet pkt = std::get<DataPacketMsg>(m.body).packet;
    pkt.receipt_times.push_back({m.dst, now_});
    if (m.dst == gn_) return;  // upstream terminus
    if (roles_.is_zo(m.dst)) {
      zo_handle_packet(m.dst, std::move(pkt));
    } else if (m.dst == roles_.co && roles_.co != 0) {
      co_handle_packet(std::move(pkt));
    }
    // Stale recipients (roles changed while in flight) swallow the packet.
  }

  void zo_handle_packet(NodeId zo, Packet pkt) {
    NodeState& z = net_.at(zo);
    if (cfg_.detection_enabled && z.detection_enabled && !pkt.stamped) {
      bool died = ledger_.charge(net_, cfg_.energy, zo, Activity::Detect, now_);
      if (died) {
        on_death(zo);
        return;
      }
      bool sleep_hit = in_sleep_window(cfg_.duty, now_);
      int wake = coin_ledgers_[zo].wake_count(pkt.origin);
      auto it = roles_.zones.find(zo);
      bool unknown = it == roles_.zones.end() || it->second.count(pkt.origin) == 0;
      int status = anomaly_status(sleep_hit, wake, cfg_.thresholds.th_token, unknown);
      bool scripted = cfg_.compromised.kind == CompromiseKind::ZoFalseFlag &&
                      zo == cfg_.compromised.node && now_ >= cfg_.compromised.start;
      if (scripted) status = 1;
      pkt.status = status;
      pkt.stamped = true;
      pkt.stamped_by = zo;
      auto& s = emit(now_, "stamp");
      s["zo"] = zo;
      s["pkt"] = pkt.pkt_id;
      s["origin"] = pkt.origin;
      s["sleep_hit"] = sleep_hit;
      s["wake_count"] = wake;
      s["unknown_origin"] = unknown;
      s["status"] = status;
      if (scripted) s["compromised"] = true;
    }
    if (roles_.co != 0 && net_.at(roles_.co).alive() && net_.at(zo).usable()) {
      send_message(Message{zo, roles_.co, now_, false, false, DataPacketMsg{std::move(pkt)}});
    }
  }

  void co_handle_packet(Packet pkt) {
    NodeState& co = net_.at(roles_.co);
    if (!co.usable()) return;
    if (!cfg_.detection_enabled || !co.detection_enabled) {
      forward_to_gn(std::move(pkt), false);
      return;
    }
    // Monitors confirm in promiscuous mode on the hop into the CO.
    for (NodeId mn : roles_.mns) {
      NodeState& mnode = net_.at(mn);
      if (!mnode.usable() || !mnode.detection_enabled) continue;
      bool died = ledger_.charge(net_, cfg_.energy, mn, Activity::Detect, now_);
      if (died) {
        on_death(mn);
        continue;
      }
      MnLedger& ml = mn_ledgers_[mn];
      ml.observed[pkt.origin].add(now_);
      int count = ml.observed[pkt.origin].count(now_, cfg_.thresholds.t_interval);
      bool ticket = confirm_intrusion(count, cfg_.thresholds, pkt.reported_energy);
      bool scripted = cfg_.compromised.kind == CompromiseKind::MnSpuriousTickets &&
                      mn == cfg_.compromised.node && now_ >= cfg_.compromised.start;
      if (scripted) ticket = true;
      auto& o = emit(now_, "observe");
      o["mn"] = mn;
      o["pkt"] = pkt.pkt_id;
      o["origin"] = pkt.origin;
      o["count"] = count;
      o["reported_energy"] = pkt.reported_energy;
      o["ticket"] = ticket;
      if (scripted) o["compromised"] = true;
      if (ticket && ml.ticketed.count(pkt.pkt_id) == 0) {
        ml.ticketed.insert(pkt.pkt_id);
        Ticket tk{mn, pkt.origin, pkt.pkt_id, now_, TicketReason::PacketCountAnomaly};
        send_message(Message{mn, roles_.co, now_, false, scripted, WarningTicketMsg{tk}});
      }
    }
    PktId id = pkt.pkt_id;
    pending_[id] = PendingDecision{std::move(pkt), now_, {}};
    Event ev;
    ev.t = now_ + cfg_.hop_latency;
    ev.kind = EvKind::CoDecision;
    ev.pkt = id;
    push_event(std::move(ev));
  }

  void forward_to_gn(Packet pkt, bool compromised) {
    if (roles_.co == 0 || !net_.at(roles_.co).usable()) return;
    ++window_volume_;
    send_message(Message{roles_.co, gn_, now_, false, compromised, DataPacketMsg{std::move(pkt)}});
  }

  void ticket_delivered(const Message& m) {
    const Ticket& tk = std::get<WarningTicketMsg>(m.body).ticket;
    if (m.dst == gn_) {
      gn_ticket(tk);
      return;
    }
    if (m.dst != roles_.co || roles_.co == 0 || !net_.at(roles_.co).usable()) return;
    if (!cfg_.detection_enabled) return;
    switch (tk.reason) {
      case TicketReason::PacketCountAnomaly: {
        auto it = pending_.find(tk.subject_packet);
        if (it != pending_.end()) it->second.tickets.push_back(tk);
        co_ledger_.add_warning(tk.subject_node, WarningEntry{now_, tk.issuer, tk.subject_packet},
                               cfg_.thresholds.t_interval);
        co_ledger_.reporters.push_back({now_, tk.issuer});
        int wc = co_ledger_.warning_count(tk.subject_node, now_, cfg_.thresholds.t_interval);
        int di = co_ledger_.distinct_warning_issuers(tk.subject_node, now_,
                                                     cfg_.thresholds.t_interval);
        if (should_block(wc, di, cfg_.thresholds.warning_block_threshold) &&
            net_.contains(tk.subject_node) && net_.at(tk.subject_node).usable()) {
          block_node(tk.subject_node, roles_.co, "warning_threshold", wc, di);
          if (roles_.is_mn(tk.subject_node) || roles_.is_zo(tk.subject_node) ||
              tk.subject_node == roles_.co) {
            schedule_watchdog_reconfigure();
          }
        }
        break;
      }
      case TicketReason::ZoFalseDetection: {
        if (net_.contains(tk.subject_node) && net_.at(tk.subject_node).usable()) {
          block_node(tk.subject_node, roles_.co, "false_detection", 0, 0);
          schedule_watchdog_reconfigure();
        }
        break;
      }
      case TicketReason::CoFlowAnomaly:
        break;  // misrouted; the gateway judges these
    }
  }

  void gn_ticket(const Ticket& tk) {
    if (tk.reason != TicketReason::CoFlowAnomaly || !cfg_.detection_enabled) return;
    if (!net_.at(gn_).usable()) return;
    gn_flow_reporters_.push_back({now_, tk.issuer});
    while (!gn_flow_reporters_.empty() &&
           gn_flow_reporters_.front().first + cfg_.thresholds.t_interval <= now_) {
      gn_flow_reporters_.pop_front();
    }
    std::set<NodeId> distinct;
    for (const auto& [t, issuer] : gn_flow_reporters_) distinct.insert(issuer);
    if (distinct.size() < 2) return;
    if (net_.contains(tk.subject_node) && net_.at(tk.subject_node).usable()) {
      block_node(tk.subject_node, gn_, "flow_anomaly", static_cast<int>(distinct.size()), 0);
      schedule_watchdog_reconfigure();
    }
  }

  void sleep_signal_delivered(NodeId id) {
    if (id == gn_ || id == roles_.co || roles_.is_mn(id) || roles_.is_zo(id)) return;
    if (roles_.zone_owner(id) != 0) return;
    if (!net_.at(id).usable()) return;
    parked_.insert(id);
    set_power(id, PowerMode::Asleep);
  }

  void co_decision(PktId pkt_id) {
    auto it = pending_.find(pkt_id);
    if (it == pending_.end()) return;
    PendingDecision pd = std::move(it->second);
    pending_.erase(it);
    if (roles_.co == 0 || !net_.at(roles_.co).usable()) return;
    std::set<NodeId> issuers;
    for (const Ticket& tk : pd.tickets) issuers.insert(tk.issuer);
    DecisionAction action = decide_action(pd.packet.status, static_cast<int>(issuers.size()));
    auto& r = emit(now_, "decision");
    r["co"] = roles_.co;
    r["pkt"] = pd.packet.pkt_id;
    r["origin"] = pd.packet.origin;
    r["status"] = pd.packet.status;
    r["tickets"] = std::vector<NodeId>(issuers.begin(), issuers.end());
    r["action"] = to_string(action);
    if (pd.packet.forged_induced) r["forged_induced"] = true;
    switch (action) {
      case DecisionAction::Forward:
        forward_to_gn(std::move(pd.packet), false);
        break;
      case DecisionAction::DropFake:
        mark_observed(pd.packet.origin);
        break;
      case DecisionAction::DropErroneous:
        note_false_detection(pd.packet);
        break;
    }
    if (issuers.size() == 1) {
      co_ledger_.mn_uncorroborated[*issuers.begin()].add(now_);
    }
    check_mn_watchdog();
  }

  void mark_observed(NodeId subject) {
    if (!net_.contains(subject)) return;
    NodeState& n = net_.at(subject);
    if (n.disposition != Disposition::Normal) return;
    n.disposition = Disposition::Observed;
    auto& r = emit(now_, "observed");
    r["subject"] = subject;
  }

  void note_false_detection(const Packet& pkt) {
    NodeId zo = pkt.stamped_by;
    if (zo == 0 || !net_.contains(zo)) return;
    co_ledger_.zo_false_detections[zo].add(now_);
    int count = co_ledger_.zo_false_detections[zo].count(now_, cfg_.thresholds.t_interval);
    if (!watchdog_zo_fires(count, cfg_.thresholds.false_detection_threshold)) return;
    if (zo_watchdog_fired_.count(zo) || !net_.at(zo).usable()) return;
    zo_watchdog_fired_.insert(zo);
    auto& r = emit(now_, "zo_watchdog");
    r["zo"] = zo;
    r["count"] = count;
    // Monitors corroborate the suspicion; the first ticket to land blocks.
    for (NodeId mn : roles_.mns) {
      const NodeState& m = net_.at(mn);
      if (!m.usable() || !m.detection_enabled) continue;
      Ticket tk{mn, zo, 0, now_, TicketReason::ZoFalseDetection};
      send_message(Message{mn, roles_.co, now_, false, false, WarningTicketMsg{tk}});
    }
  }

  void check_mn_watchdog() {
    if (!cfg_.detection_enabled) return;
    int total = 0;
    for (NodeId mn : roles_.mns) {
      if (net_.at(mn).usable()) ++total;
    }
    int distinct = co_ledger_.distinct_reporters(now_, cfg_.thresholds.t_interval);
    if (!mn_ratio_exceeded(distinct, total, cfg_.thresholds.ticket_rate_milli)) return;
    bool any = false;
    for (NodeId mn : roles_.mns) {
      if (!net_.at(mn).usable()) continue;
      int uncorr = co_ledger_.mn_uncorroborated[mn].count(now_, cfg_.thresholds.t_interval);
      if (uncorr > cfg_.thresholds.false_detection_threshold) {
        block_node(mn, roles_.co, "uncorroborated_tickets", uncorr, distinct);
        any = true;
      }
    }
    if (any) schedule_watchdog_reconfigure();
  }

  void block_node(NodeId subject, NodeId by, const char* rule, int count, int distinct) {
    NodeState& n = net_.at(subject);
    if (!n.usable()) return;
    set_power(subject, PowerMode::Asleep);
    if (!net_.at(subject).alive()) return;
    n.disposition = Disposition::Blocked;
    n.detection_enabled = false;
    parked_.erase(subject);
    auto& r = emit(now_, "block");
    r["subject"] = subject;
    r["by"] = by;
    r["rule"] = rule;
    if (count > 0) r["count"] = count;
    if (distinct > 0) r["distinct"] = distinct;
    broadcast(by, BlockNotice{subject});
  }

  RunResult finish() {
    RunResult res;
    res.trace.assign(trace_.begin(), trace_.end());
    res.metrics = compute_metrics(res.trace, ground_truth_for(cfg_, gn_));
    res.net = net_;
    res.ledger = ledger_;
    res.roles = roles_;
    res.energy_series = series_;
    res.deactivated = deactivated_;
    res.deactivated_at = deactivated_at_;
    res.election_failed = election_failed_;
    res.election_error = election_error_;
    return res;
  }

  struct PendingDecision {
    Packet packet;
    SimTime arrived = 0;
    std::vector<Ticket> tickets;
  };

  const ScenarioConfig& cfg_;
  Network net_;
  EnergyLedger ledger_;
  RoleAssignment roles_;
  std::mt19937_64 rng_;
  std::priority_queue<Event, std::vector<Event>, LaterEvent> queue_;
  Seq next_event_seq_ = 0;
  std::deque<TraceRecord> trace_;
  Seq next_trace_seq_ = 0;
  SimTime now_ = 0;
  NodeId gn_ = 0;

  std::map<NodeId, CoinLedger> coin_ledgers_;
  std::map<NodeId, MnLedger> mn_ledgers_;
  CoLedger co_ledger_;
  std::deque<std::pair<SimTime, NodeId>> gn_flow_reporters_;
  std::int64_t window_volume_ = 0;
  std::vector<std::int64_t> volume_history_;
  std::map<PktId, PendingDecision> pending_;
  std::set<NodeId> parked_;
  std::set<NodeId> zo_watchdog_fired_;
  PktId next_pkt_ = 1;
  CoinId next_coin_ = 1;
  std::int64_t attacker_acc_ = 0;
  std::int64_t flood_acc_ = 0;
  bool deactivated_ = false;
  SimTime deactivated_at_ = 0;
  bool halted_ = false;
  bool reconfig_pending_ = false;
  std::vector<EnergySample> series_;
  bool election_failed_ = false;
  std::string election_error_;
};

}  // namespace

RunResult run_simulation(const ScenarioConfig& cfg) {
  Simulator sim(cfg);
  return sim.run();
}

GroundTruth ground_truth_for(const ScenarioConfig& cfg, NodeId gn) {
  GroundTruth gt;
  gt.gn = gn;
  gt.duration = cfg.duration;
  for (const auto& spec : cfg.nodes) gt.node_ids.push_back(spec.id);
  for (NodeId t : cfg.attacker.targets) gt.targets.insert(t);
  if (cfg.compromised.kind != CompromiseKind::None) gt.compromised.insert(cfg.compromised.node);
  return gt;
}

}  // namespace segnet
