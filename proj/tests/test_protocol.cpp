#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "segnet/protocol.hpp"

using namespace segnet;

namespace {

SleepSchedule schedule(double period, double start, double end) {
  return {time_from_double(period), time_from_double(start), time_from_double(end)};
}

}  // namespace

TEST_CASE("sleep window is a closed interval on the phase") {
  SleepSchedule s = schedule(100, 0, 80);
  CHECK(in_sleep_window(s, 0) == true);
  CHECK(in_sleep_window(s, time_from_double(80)) == true);
  CHECK(in_sleep_window(s, time_from_double(80) + 1) == false);
  CHECK(in_sleep_window(s, time_from_double(99)) == false);
  // The phase repeats every period.
  CHECK(in_sleep_window(s, time_from_double(100)) == true);
  CHECK(in_sleep_window(s, time_from_double(185)) == false);
  CHECK(in_sleep_window(s, time_from_double(240)) == true);
}

TEST_CASE("an empty sleep window never matches") {
  SleepSchedule s = schedule(100, 50, 50);
  CHECK(in_sleep_window(s, time_from_double(50)) == false);
  CHECK(in_sleep_window(s, time_from_double(0)) == false);
}

TEST_CASE("sleep window may start mid-period") {
  SleepSchedule s = schedule(100, 20, 90);
  CHECK(in_sleep_window(s, time_from_double(10)) == false);
  CHECK(in_sleep_window(s, time_from_double(20)) == true);
  CHECK(in_sleep_window(s, time_from_double(90)) == true);
  CHECK(in_sleep_window(s, time_from_double(95)) == false);
  CHECK(in_sleep_window(s, time_from_double(120)) == true);
}

TEST_CASE("sleep window may wrap past the period boundary") {
  // sleep_end beyond the period wraps: asleep in [70, 100) and [0, 20].
  SleepSchedule s = schedule(100, 70, 120);
  CHECK(in_sleep_window(s, time_from_double(75)) == true);
  CHECK(in_sleep_window(s, time_from_double(99)) == true);
  CHECK(in_sleep_window(s, time_from_double(100)) == true);   // phase 0
  CHECK(in_sleep_window(s, time_from_double(115)) == true);   // phase 15
  CHECK(in_sleep_window(s, time_from_double(125)) == false);  // phase 25
  CHECK(in_sleep_window(s, time_from_double(50)) == false);
}

TEST_CASE("message kinds name the body alternative") {
  Message m;
  m.body = Hello{};
  CHECK(std::string(message_kind(m)) == "hello");
  m.body = Ack{};
  CHECK(std::string(message_kind(m)) == "ack");
  m.body = EnergyQuery{};
  CHECK(std::string(message_kind(m)) == "energy_query");
  m.body = EnergyReportMsg{};
  CHECK(std::string(message_kind(m)) == "energy_report");
  m.body = SensingQuery{};
  CHECK(std::string(message_kind(m)) == "sensing_query");
  m.body = WakeUpCoin{};
  CHECK(std::string(message_kind(m)) == "wakeup_coin");
  m.body = DataPacketMsg{};
  CHECK(std::string(message_kind(m)) == "data_packet");
  m.body = WarningTicketMsg{};
  CHECK(std::string(message_kind(m)) == "warning_ticket");
  m.body = SleepSignal{};
  CHECK(std::string(message_kind(m)) == "sleep_signal");
  m.body = BlockNotice{};
  CHECK(std::string(message_kind(m)) == "block_notice");
}

TEST_CASE("only data packets count as data traffic") {
  Message m;
  m.body = DataPacketMsg{};
  CHECK(is_data_message(m) == true);
  m.body = WakeUpCoin{};
  CHECK(is_data_message(m) == false);
  m.body = WarningTicketMsg{};
  CHECK(is_data_message(m) == false);
}

TEST_CASE("coin ledger distinguishes solicited from unsolicited wake-ups") {
  CoinLedger led;
  led.note_issued(1, 100);
  CHECK(led.is_issued(1, 100) == true);
  CHECK(led.is_issued(1, 101) == false);
  CHECK(led.is_issued(2, 100) == false);  // coins are per recipient

  CHECK(led.note_delivery(1, 100) == true);
  CHECK(led.wake_count(1) == 1);
  CHECK(led.unsolicited_count(1) == 0);

  CHECK(led.note_delivery(1, 999) == false);  // forged coin
  CHECK(led.wake_count(1) == 2);
  CHECK(led.unsolicited_count(1) == 1);
}

TEST_CASE("coin ledger isolates nodes and resets on rollover") {
  CoinLedger led;
  for (int i = 0; i < 4; ++i) led.count_wake(1, false);
  led.count_wake(2, true);
  CHECK(led.wake_count(1) == 4);
  CHECK(led.unsolicited_count(1) == 4);
  CHECK(led.wake_count(2) == 1);
  CHECK(led.wake_count(3) == 0);

  led.rollover();
  CHECK(led.wake_count(1) == 0);
  CHECK(led.unsolicited_count(1) == 0);
  CHECK(led.wake_count(2) == 0);
}

TEST_CASE("counting can be split from delivery bookkeeping") {
  // Blocked recipients pay for the receipt but never wake, so the kernel
  // checks solicitation without counting a wake event.
  CoinLedger led;
  led.note_issued(5, 42);
  CHECK(led.is_issued(5, 42) == true);
  CHECK(led.wake_count(5) == 0);
  led.count_wake(5, led.is_issued(5, 42));
  CHECK(led.wake_count(5) == 1);
  CHECK(led.unsolicited_count(5) == 0);
}
