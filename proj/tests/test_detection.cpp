#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "segnet/detection.hpp"

using namespace segnet;

namespace {

Thresholds default_thresholds() {
  Thresholds th;
  th.th_token = 3;
  th.th_min = 0;
  th.th_max = 5;
  th.th_energy = energy_from_double(1500.0);
  th.warning_block_threshold = 8;
  th.t_interval = 100 * kTimeScale;
  th.false_detection_threshold = 50;
  th.ticket_rate_milli = 150;
  th.flow_factor_milli = 3000;
  th.lifetime_milli = 500;
  th.band_mode = BandMode::Outside;
  return th;
}

}  // namespace

TEST_CASE("anomaly status flags any of the three conditions") {
  CHECK(anomaly_status(false, 0, 3, false) == 0);
  CHECK(anomaly_status(true, 0, 3, false) == 1);
  CHECK(anomaly_status(false, 4, 3, false) == 1);
  CHECK(anomaly_status(false, 3, 3, false) == 0);  // strictly above the token budget
  CHECK(anomaly_status(false, 0, 3, true) == 1);
  CHECK(anomaly_status(true, 9, 0, true) == 1);
}

TEST_CASE("band violation in outside mode") {
  CHECK(band_violated(0, 1, 5, BandMode::Outside) == true);
  CHECK(band_violated(1, 1, 5, BandMode::Outside) == false);
  CHECK(band_violated(5, 1, 5, BandMode::Outside) == false);
  CHECK(band_violated(6, 1, 5, BandMode::Outside) == true);
}

TEST_CASE("band violation in inside mode") {
  // The literal reading: suspicious when strictly between the bounds.
  CHECK(band_violated(0, 1, 5, BandMode::Inside) == false);
  CHECK(band_violated(1, 1, 5, BandMode::Inside) == false);
  CHECK(band_violated(3, 1, 5, BandMode::Inside) == true);
  CHECK(band_violated(5, 1, 5, BandMode::Inside) == false);
  CHECK(band_violated(6, 1, 5, BandMode::Inside) == false);
}

TEST_CASE("confirm_intrusion needs both the band and the energy conjunct") {
  Thresholds th = default_thresholds();
  CHECK(confirm_intrusion(6, th, energy_from_double(900.0)) == true);
  CHECK(confirm_intrusion(5, th, energy_from_double(900.0)) == false);
  CHECK(confirm_intrusion(6, th, energy_from_double(1500.0)) == false);  // strict <
  CHECK(confirm_intrusion(6, th, energy_from_double(1499.999999)) == true);
}

TEST_CASE("decision table") {
  CHECK(decide_action(0, 0) == DecisionAction::Forward);
  CHECK(decide_action(1, 0) == DecisionAction::DropErroneous);
  CHECK(decide_action(0, 1) == DecisionAction::Forward);  // single ticket forwards
  CHECK(decide_action(1, 1) == DecisionAction::Forward);
  CHECK(decide_action(0, 2) == DecisionAction::DropFake);
  CHECK(decide_action(1, 2) == DecisionAction::DropFake);
  CHECK(decide_action(0, 6) == DecisionAction::DropFake);
}

TEST_CASE("block rule needs threshold exceedance and two issuers") {
  CHECK(should_block(8, 6, 8) == false);  // strictly above
  CHECK(should_block(9, 6, 8) == true);
  CHECK(should_block(9, 1, 8) == false);  // one monitor can never block alone
  CHECK(should_block(9, 2, 8) == true);
  CHECK(should_block(100, 0, 8) == false);
}

TEST_CASE("zone-owner watchdog fires strictly above the threshold") {
  CHECK(watchdog_zo_fires(5, 5) == false);
  CHECK(watchdog_zo_fires(6, 5) == true);
}

TEST_CASE("monitor ratio test in exact fixed point") {
  // 1 of 6 reporters is 0.1667 > 0.15.
  CHECK(mn_ratio_exceeded(1, 6, 150) == true);
  // 1 of 7 is 0.1429 < 0.15.
  CHECK(mn_ratio_exceeded(1, 7, 150) == false);
  // Exact boundary: 3 of 20 = 0.15 is not an exceedance.
  CHECK(mn_ratio_exceeded(3, 20, 150) == false);
  CHECK(mn_ratio_exceeded(4, 20, 150) == true);
  CHECK(mn_ratio_exceeded(0, 6, 150) == false);
  CHECK(mn_ratio_exceeded(1, 0, 150) == false);
}

TEST_CASE("flow anomaly arms only with two windows of positive history") {
  CHECK(co_flow_abnormal(100, {}, 3000) == false);
  CHECK(co_flow_abnormal(100, {4}, 3000) == false);
  CHECK(co_flow_abnormal(100, {0, 0}, 3000) == false);  // no positive baseline
  CHECK(co_flow_abnormal(100, {4, 4}, 3000) == true);
  CHECK(co_flow_abnormal(12, {4, 4}, 3000) == false);  // equal to factor*mean
  CHECK(co_flow_abnormal(13, {4, 4}, 3000) == true);
}

TEST_CASE("flow anomaly compares against the exact rational mean") {
  // mean of {4, 5} is 4.5; 3.0 * 4.5 = 13.5, so 13 is normal and 14 anomalous.
  CHECK(co_flow_abnormal(13, {4, 5}, 3000) == false);
  CHECK(co_flow_abnormal(14, {4, 5}, 3000) == true);
  // Oracle cross-check over random histories.
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    std::vector<std::int64_t> hist;
    std::size_t len = 2 + rng() % 3;
    for (std::size_t k = 0; k < len; ++k) hist.push_back(static_cast<std::int64_t>(rng() % 50));
    std::int64_t volume = static_cast<std::int64_t>(rng() % 600);
    std::int64_t factor = 1001 + static_cast<std::int64_t>(rng() % 4000);
    std::int64_t sum = 0;
    for (std::int64_t v : hist) sum += v;
    bool expected = sum > 0 && volume * kMilli * static_cast<std::int64_t>(hist.size()) >
                                   factor * sum;
    CHECK(co_flow_abnormal(volume, hist, factor) == expected);
  }
}

TEST_CASE("sliding window covers exactly the last interval") {
  SlidingWindow w;
  const SimTime T = 100 * kTimeScale;
  w.add(0);
  w.add(50 * kTimeScale);
  CHECK(w.count(50 * kTimeScale, T) == 2);
  // An entry at t leaves the window at t + T exactly.
  CHECK(w.count(100 * kTimeScale, T) == 1);
  CHECK(w.count(150 * kTimeScale, T) == 0);
  w.add(150 * kTimeScale);
  CHECK(w.count(150 * kTimeScale, T) == 1);
}

TEST_CASE("co ledger counts warnings per subject in the window") {
  CoLedger led;
  const SimTime T = 100 * kTimeScale;
  for (int i = 0; i < 5; ++i) {
    led.add_warning(1, {SimTime(i) * kTimeScale, NodeId(7), PktId(100 + i)}, T);
  }
  led.add_warning(1, {5 * kTimeScale, 8, 105}, T);
  led.add_warning(2, {5 * kTimeScale, 7, 200}, T);
  CHECK(led.warning_count(1, 5 * kTimeScale, T) == 6);
  CHECK(led.distinct_warning_issuers(1, 5 * kTimeScale, T) == 2);
  CHECK(led.warning_count(2, 5 * kTimeScale, T) == 1);
  // Entries age out of the sliding window.
  CHECK(led.warning_count(1, 101 * kTimeScale, T) == 4);
  CHECK(led.warning_count(1, 300 * kTimeScale, T) == 0);
}

TEST_CASE("co ledger tracks distinct reporters across subjects") {
  CoLedger led;
  const SimTime T = 100 * kTimeScale;
  led.reporters.push_back({0, 7});
  led.reporters.push_back({kTimeScale, 7});
  led.reporters.push_back({2 * kTimeScale, 9});
  CHECK(led.distinct_reporters(2 * kTimeScale, T) == 2);
  CHECK(led.distinct_reporters(150 * kTimeScale, T) == 0);
}
