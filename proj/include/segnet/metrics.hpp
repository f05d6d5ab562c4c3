#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "segnet/core.hpp"
#include "segnet/trace.hpp"

namespace segnet {

struct EnergySample {
  SimTime t = 0;
  NodeId node = 0;
  Energy residual = 0;
};

// What the evaluator knows that the protocol does not: which nodes were
// genuinely attacked or compromised.
struct GroundTruth {
  std::set<NodeId> targets;
  std::set<NodeId> compromised;
  std::vector<NodeId> node_ids;
  NodeId gn = 0;
  SimTime duration = 0;
};

struct Metrics {
  std::int64_t attacked = 0;
  std::int64_t attacked_flagged = 0;
  std::int64_t clean = 0;
  std::int64_t clean_flagged = 0;
  std::int64_t packets_delivered = 0;        // sensor data packets reaching the gateway
  std::int64_t packets_dropped_fake = 0;
  std::int64_t packets_dropped_erroneous = 0;
  std::int64_t messages_sent = 0;
  std::int64_t messages_delivered = 0;
  std::int64_t messages_dropped = 0;
  std::int64_t control_messages = 0;
  std::int64_t data_messages = 0;
  bool deactivated = false;
  SimTime network_lifetime = 0;

  // Rates in millionths, matching the 6-decimal formatting of the CSV.
  std::int64_t detection_rate_micro() const;
  std::int64_t false_positive_rate_micro() const;
  std::int64_t overhead_micro() const;
  std::string to_csv() const;
};

Metrics compute_metrics(const std::vector<TraceRecord>& trace, const GroundTruth& gt);

std::string energy_series_csv(const std::vector<EnergySample>& series);
void write_text_file(const std::string& text, const std::string& path);

}  // namespace segnet
