#include "segnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace segnet {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& field,
                       const std::string& what) {
  throw ConfigError(origin + ": " + field + ": " + what);
}

double get_number(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_number()) fail(origin, field, "expected a number");
  return j.get<double>();
}

std::int64_t get_int(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_number_integer()) fail(origin, field, "expected an integer");
  return j.get<std::int64_t>();
}

bool get_bool(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_boolean()) fail(origin, field, "expected true or false");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_string()) fail(origin, field, "expected a string");
  return j.get<std::string>();
}

// Returns the subobject or an empty object, recording which defaults fire.
json get_object(const json& parent, const std::string& origin, const std::string& field) {
  if (!parent.contains(field)) return json::object();
  if (!parent.at(field).is_object()) fail(origin, field, "expected an object");
  return parent.at(field);
}

struct FieldReader {
  const json& obj;
  std::string origin;
  std::string prefix;
  std::vector<std::string>* defaults;
  std::set<std::string> seen{};

  std::string path(const std::string& key) const {
    return prefix.empty() ? key : prefix + "." + key;
  }

  bool has(const std::string& key) {
    seen.insert(key);
    return obj.contains(key);
  }

  double number(const std::string& key, double def) {
    if (!has(key)) {
      defaults->push_back(path(key) + "=" + format_ratio(milli_from_double(def), kMilli));
      return def;
    }
    return get_number(obj.at(key), origin, path(key));
  }

  double number_required(const std::string& key) {
    if (!has(key)) fail(origin, path(key), "required field missing");
    return get_number(obj.at(key), origin, path(key));
  }

  std::int64_t integer(const std::string& key, std::int64_t def) {
    if (!has(key)) {
      defaults->push_back(path(key) + "=" + std::to_string(def));
      return def;
    }
    return get_int(obj.at(key), origin, path(key));
  }

  bool boolean(const std::string& key, bool def) {
    if (!has(key)) {
      defaults->push_back(path(key) + std::string("=") + (def ? "true" : "false"));
      return def;
    }
    return get_bool(obj.at(key), origin, path(key));
  }

  std::string text(const std::string& key, const std::string& def) {
    if (!has(key)) return def;
    return get_string(obj.at(key), origin, path(key));
  }

  // Flags keys that are present but not consumed; catches typos early.
  void reject_unknown() const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!seen.count(it.key())) fail(origin, path(it.key()), "unknown field");
    }
  }
};

NodeCategory parse_category(const std::string& s, const std::string& origin,
                            const std::string& field) {
  if (s == "base") return NodeCategory::Base;
  if (s == "intelligent") return NodeCategory::Intelligent;
  if (s == "simple") return NodeCategory::Simple;
  fail(origin, field, "unknown category '" + s + "' (base, intelligent, simple)");
}

}  // namespace

const char* to_string(CompromiseKind k) {
  switch (k) {
    case CompromiseKind::None: return "none";
    case CompromiseKind::ZoFalseFlag: return "zo_false_flag";
    case CompromiseKind::MnSpuriousTickets: return "mn_spurious_tickets";
    case CompromiseKind::CoFlowFlood: return "co_flow_flood";
  }
  return "?";
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ScenarioConfig resolve_scenario(const json& raw, const std::string& origin,
                                std::optional<std::uint64_t> seed_override) {
  if (!raw.is_object()) throw ConfigError(origin + ": top-level value must be an object");
  ScenarioConfig cfg;
  FieldReader top{raw, origin, "", &cfg.defaults_applied};

  cfg.name = top.text("name", "scenario");

  // Energy model first: node categories resolve against the base energy.
  {
    json obj = get_object(raw, origin, "energy");
    top.has("energy");
    FieldReader e{obj, origin, "energy", &cfg.defaults_applied};
    double tx = e.number("cost_tx", 3.0);
    double rx = e.number("cost_rx", 2.0);
    double sense = e.number("cost_sense", 1.0);
    double detect = e.number("cost_detect", 1.0);
    double idle = e.number("cost_idle_per_time", 0.1);
    double sleep = e.number("cost_sleep_per_time", 0.01);
    double init_simple = e.number("initial_simple", 1000.0);
    double mu = top.has("mu") ? get_number(raw.at("mu"), origin, "mu") : 2.0;
    if (!raw.contains("mu")) cfg.defaults_applied.push_back("mu=2.000");
    if (mu <= 0.0) fail(origin, "mu", "must be positive");
    double init_intelligent = e.number("initial_intelligent", mu * init_simple);
    double init_base = e.number("initial_base", 3000.0);
    e.reject_unknown();
    const std::pair<double, const char*> rates[] = {
        {tx, "cost_tx"},          {rx, "cost_rx"},
        {sense, "cost_sense"},    {detect, "cost_detect"},
        {idle, "cost_idle_per_time"}, {sleep, "cost_sleep_per_time"}};
    for (const auto& [v, name] : rates) {
      if (v < 0.0) fail(origin, std::string("energy.") + name, "must be non-negative");
    }
    const std::pair<double, const char*> initials[] = {{init_simple, "initial_simple"},
                                                       {init_intelligent, "initial_intelligent"},
                                                       {init_base, "initial_base"}};
    for (const auto& [v, name] : initials) {
      if (v <= 0.0) fail(origin, std::string("energy.") + name, "must be positive");
    }
    cfg.mu_milli = milli_from_double(mu);
    cfg.energy.cost_tx = energy_from_double(tx);
    cfg.energy.cost_rx = energy_from_double(rx);
    cfg.energy.cost_sense = energy_from_double(sense);
    cfg.energy.cost_detect = energy_from_double(detect);
    cfg.energy.cost_idle_per_time = energy_from_double(idle);
    cfg.energy.cost_sleep_per_time = energy_from_double(sleep);
    cfg.energy.initial_simple = energy_from_double(init_simple);
    cfg.energy.initial_intelligent = energy_from_double(init_intelligent);
    cfg.energy.initial_base = energy_from_double(init_base);
  }

  if (!top.has("radio_range")) fail(origin, "radio_range", "required field missing");
  cfg.radio_range = get_number(raw.at("radio_range"), origin, "radio_range");
  if (cfg.radio_range <= 0.0) fail(origin, "radio_range", "must be positive");

  cfg.k_mn = static_cast<int>(top.integer("k_mn", 6));
  cfg.z_zo = static_cast<int>(top.integer("z_zo", 2));
  if (cfg.k_mn < 1) fail(origin, "k_mn", "must be at least 1");
  if (cfg.z_zo < 1) fail(origin, "z_zo", "must be at least 1");

  // Duty cycle before nodes so join validation can reference the period.
  SimTime period;
  {
    json obj = get_object(raw, origin, "duty_cycle");
    top.has("duty_cycle");
    FieldReader d{obj, origin, "duty_cycle", &cfg.defaults_applied};
    double p = d.number("period", 100.0);
    double ss = d.number("sleep_start", 0.0);
    double se = d.number("sleep_end", 80.0);
    d.reject_unknown();
    if (p <= 0.0) fail(origin, "duty_cycle.period", "must be positive");
    if (ss < 0.0 || ss >= p) fail(origin, "duty_cycle.sleep_start", "must lie in [0, period)");
    if (se < ss || se > ss + p) {
      fail(origin, "duty_cycle.sleep_end", "must lie in [sleep_start, sleep_start + period]");
    }
    cfg.duty.period = time_from_double(p);
    cfg.duty.sleep_start = time_from_double(ss);
    cfg.duty.sleep_end = time_from_double(se);
    period = cfg.duty.period;
  }

  // Nodes: base node first so derived categories have a reference energy.
  {
    if (!top.has("nodes")) fail(origin, "nodes", "required field missing");
    const json& arr = raw.at("nodes");
    if (!arr.is_array() || arr.empty()) fail(origin, "nodes", "expected a non-empty array");
    Energy base_energy = 0;
    std::vector<std::size_t> base_idx;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const json& n = arr.at(i);
      std::string p = "nodes[" + std::to_string(i) + "]";
      if (!n.is_object()) fail(origin, p, "expected an object");
      if (n.contains("category") &&
          get_string(n.at("category"), origin, p + ".category") == "base") {
        base_idx.push_back(i);
        if (n.contains("initial_energy")) {
          base_energy =
              energy_from_double(get_number(n.at("initial_energy"), origin, p + ".initial_energy"));
        } else {
          base_energy = cfg.energy.initial_base;
        }
      }
    }
    if (base_idx.size() != 1) {
      fail(origin, "nodes", "exactly one node with category \"base\" is required, found " +
                                std::to_string(base_idx.size()));
    }
    std::set<NodeId> ids;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const json& n = arr.at(i);
      std::string p = "nodes[" + std::to_string(i) + "]";
      FieldReader f{n, origin, p, &cfg.defaults_applied};
      NodeSpec spec;
      std::int64_t id = f.integer("id", -1);
      // 0 is reserved as the "no node" sentinel in role bookkeeping.
      if (id < 1 || id >= kAttackerId) fail(origin, p + ".id", "must be in [1, 65534]");
      spec.id = static_cast<NodeId>(id);
      if (!ids.insert(spec.id).second) fail(origin, p + ".id", "duplicate node id");
      spec.pos.x = f.number_required("x");
      spec.pos.y = f.number_required("y");
      bool has_cat = f.has("category");
      bool has_energy = f.has("initial_energy");
      if (!has_cat && !has_energy) {
        fail(origin, p, "needs category or initial_energy (or both)");
      }
      if (has_energy) {
        double ie = get_number(n.at("initial_energy"), origin, p + ".initial_energy");
        if (ie <= 0.0) fail(origin, p + ".initial_energy", "must be positive");
        spec.initial_energy = energy_from_double(ie);
      }
      if (has_cat) {
        spec.category = parse_category(get_string(n.at("category"), origin, p + ".category"),
                                       origin, p + ".category");
        if (!has_energy) spec.initial_energy = cfg.energy.initial_for(spec.category);
      } else {
        // Derived category: energy scaled by mu against the base node's budget.
        bool intelligent = spec.initial_energy * cfg.mu_milli > base_energy * kMilli;
        spec.category = intelligent ? NodeCategory::Intelligent : NodeCategory::Simple;
      }
      double jt = f.number("join_time", 0.0);
      if (jt < 0.0) fail(origin, p + ".join_time", "must be non-negative");
      spec.join_time = time_from_double(jt);
      f.reject_unknown();
      cfg.nodes.push_back(spec);
    }
  }

  // Detection thresholds.
  {
    json obj = get_object(raw, origin, "thresholds");
    top.has("thresholds");
    FieldReader t{obj, origin, "thresholds", &cfg.defaults_applied};
    Thresholds& th = cfg.thresholds;
    th.th_token = t.integer("th_token", 3);
    th.th_min = t.integer("th_min", 0);
    th.th_max = t.integer("th_max", 5);
    double th_energy = t.number("th_energy", 1500.0);
    th.warning_block_threshold = t.integer("warning_block_threshold", 8);
    double t_interval = t.number("t_interval", 100.0);
    th.false_detection_threshold = t.integer("false_detection_threshold", 50);
    double ticket_rate = t.number("ticket_rate_threshold", 0.15);
    double flow_factor = t.number("flow_factor", 3.0);
    double lifetime = t.number("lifetime_threshold", 0.5);
    std::string band = t.text("band_mode", "outside");
    if (!obj.contains("band_mode")) cfg.defaults_applied.push_back("thresholds.band_mode=outside");
    t.reject_unknown();
    if (th.th_token < 0) fail(origin, "thresholds.th_token", "must be non-negative");
    if (th.th_min < 0) fail(origin, "thresholds.th_min", "must be non-negative");
    if (th.th_max <= th.th_min) fail(origin, "thresholds.th_max", "must exceed th_min");
    if (th_energy < 0.0) fail(origin, "thresholds.th_energy", "must be non-negative");
    if (th.warning_block_threshold < 1) {
      fail(origin, "thresholds.warning_block_threshold", "must be at least 1");
    }
    if (t_interval <= 0.0) fail(origin, "thresholds.t_interval", "must be positive");
    if (th.false_detection_threshold < 1) {
      fail(origin, "thresholds.false_detection_threshold", "must be at least 1");
    }
    if (ticket_rate <= 0.0 || ticket_rate > 1.0) {
      fail(origin, "thresholds.ticket_rate_threshold", "must lie in (0, 1]");
    }
    if (flow_factor <= 1.0) fail(origin, "thresholds.flow_factor", "must exceed 1");
    if (lifetime <= 0.0 || lifetime > 1.0) {
      fail(origin, "thresholds.lifetime_threshold", "must lie in (0, 1]");
    }
    if (band == "outside") {
      th.band_mode = BandMode::Outside;
    } else if (band == "inside") {
      th.band_mode = BandMode::Inside;
    } else {
      fail(origin, "thresholds.band_mode", "must be \"outside\" or \"inside\"");
    }
    th.th_energy = energy_from_double(th_energy);
    th.t_interval = time_from_double(t_interval);
    th.ticket_rate_milli = milli_from_double(ticket_rate);
    th.flow_factor_milli = milli_from_double(flow_factor);
    th.lifetime_milli = milli_from_double(lifetime);
  }

  // Attacker.
  if (top.has("attacker")) {
    const json& obj = raw.at("attacker");
    if (!obj.is_object()) fail(origin, "attacker", "expected an object");
    FieldReader a{obj, origin, "attacker", &cfg.defaults_applied};
    std::string kind = a.text("kind", "sleep_deprivation");
    if (kind != "sleep_deprivation") {
      fail(origin, "attacker.kind", "unknown kind '" + kind + "' (sleep_deprivation)");
    }
    if (!a.has("targets")) fail(origin, "attacker.targets", "required field missing");
    const json& tgt = obj.at("targets");
    if (!tgt.is_array() || tgt.empty()) {
      fail(origin, "attacker.targets", "expected a non-empty array of node ids");
    }
    for (std::size_t i = 0; i < tgt.size(); ++i) {
      std::int64_t id = get_int(tgt.at(i), origin, "attacker.targets[" + std::to_string(i) + "]");
      auto it = std::find_if(cfg.nodes.begin(), cfg.nodes.end(),
                             [&](const NodeSpec& s) { return s.id == id; });
      if (it == cfg.nodes.end()) {
        fail(origin, "attacker.targets[" + std::to_string(i) + "]", "no such node id");
      }
      cfg.attacker.targets.push_back(static_cast<NodeId>(id));
    }
    double rate = a.number("rate", 1.0);
    if (rate <= 0.0) fail(origin, "attacker.rate", "must be positive");
    cfg.attacker.rate_milli = milli_from_double(rate);
    double ws = 0.0, we = 0.0;
    if (a.has("active_window")) {
      const json& w = obj.at("active_window");
      if (!w.is_array() || w.size() != 2) {
        fail(origin, "attacker.active_window", "expected [start, end]");
      }
      ws = get_number(w.at(0), origin, "attacker.active_window[0]");
      we = get_number(w.at(1), origin, "attacker.active_window[1]");
      if (ws < 0.0 || we <= ws) fail(origin, "attacker.active_window", "needs 0 <= start < end");
    } else {
      fail(origin, "attacker.active_window", "required field missing");
    }
    a.reject_unknown();
    cfg.attacker.enabled = true;
    cfg.attacker.window_start = time_from_double(ws);
    cfg.attacker.window_end = time_from_double(we);
  }

  // Compromised insider.
  if (top.has("compromised")) {
    const json& obj = raw.at("compromised");
    if (!obj.is_object()) fail(origin, "compromised", "expected an object");
    FieldReader c{obj, origin, "compromised", &cfg.defaults_applied};
    std::int64_t id = c.integer("node", -1);
    auto it = std::find_if(cfg.nodes.begin(), cfg.nodes.end(),
                           [&](const NodeSpec& s) { return s.id == id; });
    if (it == cfg.nodes.end()) fail(origin, "compromised.node", "no such node id");
    cfg.compromised.node = static_cast<NodeId>(id);
    std::string kind = c.text("kind", "");
    if (kind == "zo_false_flag") {
      cfg.compromised.kind = CompromiseKind::ZoFalseFlag;
    } else if (kind == "mn_spurious_tickets") {
      cfg.compromised.kind = CompromiseKind::MnSpuriousTickets;
    } else if (kind == "co_flow_flood") {
      cfg.compromised.kind = CompromiseKind::CoFlowFlood;
    } else {
      fail(origin, "compromised.kind",
           "must be zo_false_flag, mn_spurious_tickets, or co_flow_flood");
    }
    double start = c.number("start", 0.0);
    if (start < 0.0) fail(origin, "compromised.start", "must be non-negative");
    cfg.compromised.start = time_from_double(start);
    double rate = c.number("rate", 1.0);
    if (rate <= 0.0) fail(origin, "compromised.rate", "must be positive");
    cfg.compromised.rate_milli = milli_from_double(rate);
    c.reject_unknown();
  }

  // Simulation block.
  {
    json obj = get_object(raw, origin, "sim");
    top.has("sim");
    FieldReader s{obj, origin, "sim", &cfg.defaults_applied};
    double duration = s.number("duration", 1000.0);
    if (duration <= 0.0) fail(origin, "sim.duration", "must be positive");
    cfg.duration = time_from_double(duration);
    double reconf = s.number("reconfigure_interval", duration / 4.0);
    if (reconf <= 0.0) fail(origin, "sim.reconfigure_interval", "must be positive");
    cfg.reconfigure_interval = time_from_double(reconf);
    double latency = s.number("hop_latency", 1.0);
    if (latency <= 0.0) fail(origin, "sim.hop_latency", "must be positive");
    cfg.hop_latency = time_from_double(latency);
    double timer = s.number("discovery_timer", 2.0 * latency);
    if (timer <= 0.0) fail(origin, "sim.discovery_timer", "must be positive");
    cfg.discovery_timer = time_from_double(timer);
    if (s.has("query_schedule")) {
      const json& q = obj.at("query_schedule");
      if (!q.is_array() || q.empty()) {
        fail(origin, "sim.query_schedule", "expected a non-empty array of period offsets");
      }
      for (std::size_t i = 0; i < q.size(); ++i) {
        double phase = get_number(q.at(i), origin, "sim.query_schedule[" + std::to_string(i) + "]");
        SimTime pt = time_from_double(phase);
        if (pt < 0 || pt >= period) {
          fail(origin, "sim.query_schedule[" + std::to_string(i) + "]",
               "must lie in [0, duty period)");
        }
        cfg.query_phases.push_back(pt);
      }
      std::sort(cfg.query_phases.begin(), cfg.query_phases.end());
    } else {
      // Default: query shortly after the sleep window opens so legitimate
      // replies land while targets are awake.
      SimTime phase = std::min<SimTime>(cfg.duty.sleep_end + 5 * kTimeScale, period - kTimeScale);
      if (phase < 0) phase = 0;
      cfg.query_phases.push_back(phase);
      cfg.defaults_applied.push_back("sim.query_schedule=[" + format_time(phase) + "]");
    }
    if (s.has("seed")) {
      std::int64_t seed = get_int(obj.at("seed"), origin, "sim.seed");
      if (seed < 0) fail(origin, "sim.seed", "must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(seed);
    } else if (!seed_override) {
      fail(origin, "sim.seed", "required field missing (or pass --seed)");
    }
    s.reject_unknown();
  }
  if (seed_override) cfg.seed = *seed_override;

  cfg.detection_enabled = top.boolean("detection_enabled", true);
  top.reject_unknown();

  // Digest over the canonical (key-sorted) document plus the effective seed,
  // so replays can detect a trace/scenario mismatch.
  json canon = raw;
  canon["sim"]["seed"] = cfg.seed;
  cfg.config_digest = fnv1a64(canon.dump());
  return cfg;
}

json parse_scenario_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Map the byte offset to a line number for the diagnostic.
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ConfigError(origin + ":" + std::to_string(line) + ": JSON syntax error: " + e.what());
  }
}

json read_scenario_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open scenario file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_scenario_json(ss.str(), path);
}

ScenarioConfig load_scenario(const std::string& text, const std::string& origin,
                             std::optional<std::uint64_t> seed_override) {
  return resolve_scenario(parse_scenario_json(text, origin), origin, seed_override);
}

ScenarioConfig load_scenario_file(const std::string& path,
                                  std::optional<std::uint64_t> seed_override) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open scenario file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return load_scenario(ss.str(), path, seed_override);
}

namespace {

struct OverrideSpec {
  const char* key;
  const char* section;  // nullptr for top level
  const char* field;
  bool is_bool;
  bool is_int;
};

const OverrideSpec kOverrides[] = {
    {"detection_enabled", nullptr, "detection_enabled", true, false},
    {"mu", nullptr, "mu", false, false},
    {"radio_range", nullptr, "radio_range", false, false},
    {"k_mn", nullptr, "k_mn", false, true},
    {"z_zo", nullptr, "z_zo", false, true},
    {"th_token", "thresholds", "th_token", false, true},
    {"th_min", "thresholds", "th_min", false, true},
    {"th_max", "thresholds", "th_max", false, true},
    {"th_energy", "thresholds", "th_energy", false, false},
    {"warning_block_threshold", "thresholds", "warning_block_threshold", false, true},
    {"t_interval", "thresholds", "t_interval", false, false},
    {"false_detection_threshold", "thresholds", "false_detection_threshold", false, true},
    {"ticket_rate_threshold", "thresholds", "ticket_rate_threshold", false, false},
    {"flow_factor", "thresholds", "flow_factor", false, false},
    {"lifetime_threshold", "thresholds", "lifetime_threshold", false, false},
    {"attacker_rate", "attacker", "rate", false, false},
    {"duration", "sim", "duration", false, false},
    {"reconfigure_interval", "sim", "reconfigure_interval", false, false},
};

}  // namespace

std::vector<std::string> known_override_keys() {
  std::vector<std::string> keys;
  for (const auto& o : kOverrides) keys.push_back(o.key);
  return keys;
}

void apply_override(nlohmann::json& raw, const std::string& key, const std::string& value) {
  for (const auto& o : kOverrides) {
    if (key != o.key) continue;
    nlohmann::json parsed;
    if (o.is_bool) {
      if (value == "true" || value == "1") {
        parsed = true;
      } else if (value == "false" || value == "0") {
        parsed = false;
      } else {
        throw ConfigError("override " + key + ": expected true or false, got '" + value + "'");
      }
    } else {
      try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        if (o.is_int) {
          if (v != std::floor(v)) {
            throw ConfigError("override " + key + ": expected an integer, got '" + value + "'");
          }
          parsed = static_cast<std::int64_t>(v);
        } else {
          parsed = v;
        }
      } catch (const std::invalid_argument&) {
        throw ConfigError("override " + key + ": expected a number, got '" + value + "'");
      } catch (const std::out_of_range&) {
        throw ConfigError("override " + key + ": number out of range: '" + value + "'");
      }
    }
    if (o.section) {
      raw[o.section][o.field] = parsed;
    } else {
      raw[o.field] = parsed;
    }
    return;
  }
  std::string keys;
  for (const auto& o : kOverrides) {
    if (!keys.empty()) keys += ", ";
    keys += o.key;
  }
  throw ConfigError("unknown sweep key '" + key + "'; known keys: " + keys);
}

}  // namespace segnet
