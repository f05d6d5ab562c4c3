#include "segnet/protocol.hpp"

namespace segnet {

const char* to_string(TicketReason r) {
  switch (r) {
    case TicketReason::PacketCountAnomaly: return "packet_count_anomaly";
    case TicketReason::ZoFalseDetection: return "zo_false_detection";
    case TicketReason::CoFlowAnomaly: return "co_flow_anomaly";
  }
  return "?";
}

const char* message_kind(const Message& msg) {
  switch (msg.body.index()) {
    case 0: return "hello";
    case 1: return "ack";
    case 2: return "energy_query";
    case 3: return "energy_report";
    case 4: return "sensing_query";
    case 5: return "wakeup_coin";
    case 6: return "data_packet";
    case 7: return "warning_ticket";
    case 8: return "sleep_signal";
    case 9: return "block_notice";
  }
  return "?";
}

bool is_data_message(const Message& msg) {
  return std::holds_alternative<DataPacketMsg>(msg.body);
}

bool in_sleep_window(const SleepSchedule& schedule, SimTime t) {
  if (schedule.period <= 0) return false;
  if (schedule.sleep_start >= schedule.sleep_end) return false;  // no sleep window
  const SimTime phase = t % schedule.period;
  if (phase >= schedule.sleep_start && phase <= schedule.sleep_end) return true;
  // Window may extend past the period boundary (sleep_end > period).
  if (schedule.sleep_end > schedule.period && phase + schedule.period <= schedule.sleep_end) {
    return true;
  }
  return false;
}

void CoinLedger::note_issued(NodeId sn, CoinId coin) { issued_[sn].insert(coin); }

bool CoinLedger::is_issued(NodeId sn, CoinId coin) const {
  auto it = issued_.find(sn);
  return it != issued_.end() && it->second.count(coin) != 0;
}

void CoinLedger::count_wake(NodeId sn, bool solicited) {
  ++wake_events_[sn];
  if (!solicited) ++unsolicited_[sn];
}

bool CoinLedger::note_delivery(NodeId sn, CoinId coin) {
  const bool solicited = is_issued(sn, coin);
  count_wake(sn, solicited);
  return solicited;
}

int CoinLedger::wake_count(NodeId sn) const {
  auto it = wake_events_.find(sn);
  return it == wake_events_.end() ? 0 : it->second;
}

int CoinLedger::unsolicited_count(NodeId sn) const {
  auto it = unsolicited_.find(sn);
  return it == unsolicited_.end() ? 0 : it->second;
}

void CoinLedger::rollover() {
  issued_.clear();
  wake_events_.clear();
  unsolicited_.clear();
}

}  // namespace segnet
