#pragma once

#include <deque>
#include <map>
#include <set>
#include <vector>

#include "segnet/protocol.hpp"
#include "segnet/types.hpp"

namespace segnet {

enum class BandMode { Outside, Inside };

const char* to_string(BandMode m);

struct Thresholds {
  int th_token = 3;
  int th_min = 0;
  int th_max = 5;
  Energy th_energy = 0;
  int warning_block_threshold = 8;
  SimTime t_interval = 0;
  int false_detection_threshold = 50;
  std::int64_t ticket_rate_milli = 150;   // ratio in (0, 1]
  std::int64_t flow_factor_milli = 3000;  // multiplier > 1
  std::int64_t lifetime_milli = 500;      // alive fraction in (0, 1]
  BandMode band_mode = BandMode::Outside;
};

enum class DecisionAction { Forward, DropErroneous, DropFake };

const char* to_string(DecisionAction a);

// ZO verdict: suspected iff the receipt falls in the origin's sleep window, or
// the origin's wake-up count this interval exceeds th_token, or the origin is
// not a known zone member.
int anomaly_status(bool sleep_window_hit, int wake_count, int th_token, bool unknown_origin);

// MN verdict: ticket iff the windowed packet count violates the band AND the
// reported residual energy sits below th_energy.
bool band_violated(int count, int th_min, int th_max, BandMode mode);
bool confirm_intrusion(int window_count, const Thresholds& th, Energy reported_energy);

// CO verdict over a settled ticket set.
DecisionAction decide_action(int status, int distinct_ticket_issuers);

// Block rule: windowed warning count above threshold, and the evidence spans
// at least two distinct issuers (a single MN can never block a node alone).
bool should_block(int warning_count, int distinct_issuers, int warning_block_threshold);

bool watchdog_zo_fires(int false_detection_count, int false_detection_threshold);

bool mn_ratio_exceeded(int distinct_reporters, int total_mns, std::int64_t rate_milli);

// Flow anomaly: volume > factor * mean(previous windows). Armed only with at
// least two closed windows of history and a positive baseline.
bool co_flow_abnormal(std::int64_t volume, const std::vector<std::int64_t>& history,
                      std::int64_t factor_milli);

// Sliding-window event set covering exactly the last t_interval: (now-T, now].
class SlidingWindow {
 public:
  void add(SimTime t) { times_.push_back(t); }
  int count(SimTime now, SimTime window) {
    prune(now, window);
    return static_cast<int>(times_.size());
  }
  void prune(SimTime now, SimTime window) {
    while (!times_.empty() && times_.front() + window <= now) times_.pop_front();
  }

 private:
  std::deque<SimTime> times_;
};

// Per-MN observation state for confirm_intrusion.
struct MnLedger {
  std::map<NodeId, SlidingWindow> observed;  // packet receipts per origin
  std::set<PktId> ticketed;                  // one ticket per (issuer, packet)
};

struct WarningEntry {
  SimTime t = 0;
  NodeId issuer = 0;
  PktId pkt = 0;
};

// CO-side ledger: warnings per subject, ZO false detections, per-MN
// uncorroborated tickets, and the reporter stream for the MN-ratio test.
struct CoLedger {
  std::map<NodeId, std::deque<WarningEntry>> warnings;
  std::map<NodeId, SlidingWindow> zo_false_detections;
  std::map<NodeId, SlidingWindow> mn_uncorroborated;
  std::deque<std::pair<SimTime, NodeId>> reporters;

  void add_warning(NodeId subject, const WarningEntry& e, SimTime window);
  int warning_count(NodeId subject, SimTime now, SimTime window);
  int distinct_warning_issuers(NodeId subject, SimTime now, SimTime window);
  int distinct_reporters(SimTime now, SimTime window);
};

}  // namespace segnet
