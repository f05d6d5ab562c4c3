#include "segnet/metrics.hpp"

#include <fstream>

namespace segnet {

namespace {

// Ratio scaled to millionths with round-half-away, 0-denominator convention
// passed explicitly: an empty population counts as fully detected / never
// false-flagged / zero overhead.
std::int64_t ratio_micro(std::int64_t num, std::int64_t den, std::int64_t if_empty) {
  if (den == 0) return if_empty;
  return (num * 1000000 + den / 2) / den;
}

std::string micro_string(std::int64_t micro) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld.%06lld", static_cast<long long>(micro / 1000000),
                static_cast<long long>(micro % 1000000));
  return buf;
}

}  // namespace

std::int64_t Metrics::detection_rate_micro() const {
  return ratio_micro(attacked_flagged, attacked, 1000000);
}

std::int64_t Metrics::false_positive_rate_micro() const {
  return ratio_micro(clean_flagged, clean, 0);
}

std::int64_t Metrics::overhead_micro() const {
  return ratio_micro(control_messages, data_messages, 0);
}

std::string Metrics::to_csv() const {
  std::string out = "metric,value\n";
  out += "detection_rate," + micro_string(detection_rate_micro()) + "\n";
  out += "false_positive_rate," + micro_string(false_positive_rate_micro()) + "\n";
  out += "packets_delivered," + std::to_string(packets_delivered) + "\n";
  out += "packets_dropped_fake," + std::to_string(packets_dropped_fake) + "\n";
  out += "packets_dropped_erroneous," + std::to_string(packets_dropped_erroneous) + "\n";
  out += "packet_overhead," + micro_string(overhead_micro()) + "\n";
  out += "messages_sent," + std::to_string(messages_sent) + "\n";
  out += "messages_delivered," + std::to_string(messages_delivered) + "\n";
  out += "messages_dropped," + std::to_string(messages_dropped) + "\n";
  out += "network_lifetime," + format_time(network_lifetime) + "\n";
  out += "network_deactivated," + std::to_string(deactivated ? 1 : 0) + "\n";
  return out;
}

Metrics compute_metrics(const std::vector<TraceRecord>& trace, const GroundTruth& gt) {
  Metrics m;
  m.network_lifetime = gt.duration;
  std::set<NodeId> flagged;
  for (const auto& rec : trace) {
    const std::string ev = rec.at("ev").get<std::string>();
    if (ev == "msg") {
      ++m.messages_sent;
      bool delivered = rec.at("result").get<std::string>() == "delivered";
      if (delivered) {
        ++m.messages_delivered;
      } else {
        ++m.messages_dropped;
      }
      bool data = rec.at("kind").get<std::string>() == "data_packet";
      if (data) {
        ++m.data_messages;
      } else {
        ++m.control_messages;
      }
      if (data && delivered && rec.at("dst").get<NodeId>() == gt.gn &&
          !rec.value("forged_induced", false) && !rec.value("compromised", false)) {
        ++m.packets_delivered;
      }
    } else if (ev == "decision") {
      const std::string action = rec.at("action").get<std::string>();
      if (action == "drop_fake") ++m.packets_dropped_fake;
      if (action == "drop_erroneous") ++m.packets_dropped_erroneous;
    } else if (ev == "observed" || ev == "block") {
      flagged.insert(rec.at("subject").get<NodeId>());
    } else if (ev == "deactivated") {
      m.deactivated = true;
      m.network_lifetime = rec.at("t").get<SimTime>();
    }
  }
  for (NodeId id : gt.node_ids) {
    if (gt.targets.count(id)) {
      ++m.attacked;
      if (flagged.count(id)) ++m.attacked_flagged;
    } else if (!gt.compromised.count(id) && id != gt.gn) {
      ++m.clean;
      if (flagged.count(id)) ++m.clean_flagged;
    }
  }
  return m;
}

std::string energy_series_csv(const std::vector<EnergySample>& series) {
  std::string out = "node,time,residual\n";
  for (const auto& s : series) {
    out += std::to_string(s.node) + "," + format_time(s.t) + "," + format_energy(s.residual) + "\n";
  }
  return out;
}

void write_text_file(const std::string& text, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open file for writing: " + path);
  f << text;
  if (!f) throw ConfigError("failed writing file: " + path);
}

}  // namespace segnet
