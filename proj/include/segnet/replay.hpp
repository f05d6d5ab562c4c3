#pragma once

#include <string>
#include <vector>

#include "segnet/scenario.hpp"
#include "segnet/trace.hpp"

namespace segnet {

struct ReplayReport {
  std::int64_t records_processed = 0;
  std::int64_t verdicts_checked = 0;
  std::int64_t skipped_compromised = 0;
  std::int64_t divergence_count = 0;
  std::vector<std::string> divergences;  // first examples, capped
  bool digest_mismatch = false;

  bool ok() const { return !digest_mismatch && divergence_count == 0; }
};

// Walks a trace and re-derives every detection verdict and block decision
// from the recorded message flow plus the scenario thresholds, using none of
// the kernel's live state. Records flagged as scripted misbehavior have their
// verdicts skipped (the inputs are still cross-checked) and are counted.
ReplayReport replay_trace(const std::vector<TraceRecord>& trace, const ScenarioConfig& cfg);

}  // namespace segnet
