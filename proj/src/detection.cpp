#include "segnet/detection.hpp"

namespace segnet {

const char* to_string(BandMode m) {
  return m == BandMode::Outside ? "outside" : "inside";
}

const char* to_string(DecisionAction a) {
  switch (a) {
    case DecisionAction::Forward: return "forward";
    case DecisionAction::DropErroneous: return "drop_erroneous";
    case DecisionAction::DropFake: return "drop_fake";
  }
  return "?";
}

int anomaly_status(bool sleep_window_hit, int wake_count, int th_token, bool unknown_origin) {
  if (unknown_origin) return 1;
  if (sleep_window_hit) return 1;
  if (wake_count > th_token) return 1;
  return 0;
}

bool band_violated(int count, int th_min, int th_max, BandMode mode) {
  if (mode == BandMode::Outside) return count < th_min || count > th_max;
  return count > th_min && count < th_max;
}

bool confirm_intrusion(int window_count, const Thresholds& th, Energy reported_energy) {
  return band_violated(window_count, th.th_min, th.th_max, th.band_mode) &&
         reported_energy < th.th_energy;
}

DecisionAction decide_action(int status, int distinct_ticket_issuers) {
  if (distinct_ticket_issuers >= 2) return DecisionAction::DropFake;
  if (status == 1 && distinct_ticket_issuers == 0) return DecisionAction::DropErroneous;
  return DecisionAction::Forward;
}

bool should_block(int warning_count, int distinct_issuers, int warning_block_threshold) {
  return warning_count > warning_block_threshold && distinct_issuers >= 2;
}

bool watchdog_zo_fires(int false_detection_count, int false_detection_threshold) {
  return false_detection_count > false_detection_threshold;
}

bool mn_ratio_exceeded(int distinct_reporters, int total_mns, std::int64_t rate_milli) {
  if (total_mns <= 0) return false;
  return static_cast<std::int64_t>(distinct_reporters) * kMilli >
         rate_milli * static_cast<std::int64_t>(total_mns);
}

bool co_flow_abnormal(std::int64_t volume, const std::vector<std::int64_t>& history,
                      std::int64_t factor_milli) {
  if (history.size() < 2) return false;
  std::int64_t sum = 0;
  for (std::int64_t v : history) sum += v;
  if (sum <= 0) return false;
  // volume > factor * (sum / n), kept in integers.
  const std::int64_t n = static_cast<std::int64_t>(history.size());
  return volume * n * kMilli > factor_milli * sum;
}

void CoLedger::add_warning(NodeId subject, const WarningEntry& e, SimTime window) {
  auto& dq = warnings[subject];
  dq.push_back(e);
  while (!dq.empty() && dq.front().t + window <= e.t) dq.pop_front();
}

int CoLedger::warning_count(NodeId subject, SimTime now, SimTime window) {
  auto it = warnings.find(subject);
  if (it == warnings.end()) return 0;
  auto& dq = it->second;
  while (!dq.empty() && dq.front().t + window <= now) dq.pop_front();
  return static_cast<int>(dq.size());
}

int CoLedger::distinct_warning_issuers(NodeId subject, SimTime now, SimTime window) {
  auto it = warnings.find(subject);
  if (it == warnings.end()) return 0;
  auto& dq = it->second;
  while (!dq.empty() && dq.front().t + window <= now) dq.pop_front();
  std::set<NodeId> issuers;
  for (const auto& e : dq) issuers.insert(e.issuer);
  return static_cast<int>(issuers.size());
}

int CoLedger::distinct_reporters(SimTime now, SimTime window) {
  while (!reporters.empty() && reporters.front().first + window <= now) reporters.pop_front();
  std::set<NodeId> set;
  for (const auto& [t, id] : reporters) {
    (void)t;
    set.insert(id);
  }
  return static_cast<int>(set.size());
}

}  // namespace segnet
