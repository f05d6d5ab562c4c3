#pragma once

#include <string>
#include <vector>

#include "segnet/simkernel.hpp"

namespace segnet {

enum class StepState { Pass, Fail, NotReached };

const char* to_string(StepState s);

struct StepResult {
  std::string name;
  StepState state = StepState::NotReached;
  std::string detail;
};

struct CaseStudyReport {
  RunResult result;
  std::vector<StepResult> steps;

  bool all_passed() const;
};

// The built-in fixture: one gateway, nine intelligent relays around the
// cluster owner, four sensing nodes in two zones, and a sleep-deprivation
// attacker hammering sensing node 1.
const char* casestudy_scenario_text();

// Runs the fixture and checks the expected storyline step by step: election,
// forged wake-up, suspicion stamp, corroboration, block, quiescence, and the
// unharmed legitimate traffic.
CaseStudyReport run_casestudy();

}  // namespace segnet
