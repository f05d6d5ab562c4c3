#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "segnet/types.hpp"

namespace segnet {

struct Packet {
  PktId pkt_id = 0;
  NodeId origin = 0;
  int status = 0;  // 0 genuine, 1 suspected; stamped exactly once by the ZO
  bool stamped = false;
  NodeId stamped_by = 0;
  const char* payload_kind = "reading";
  SimTime created_at = 0;
  Energy reported_energy = 0;  // piggybacked residual at origination
  bool forged_induced = false;  // ground truth: reply provoked by a forged coin
  std::vector<std::pair<NodeId, SimTime>> receipt_times;
};

enum class TicketReason { PacketCountAnomaly, ZoFalseDetection, CoFlowAnomaly };

const char* to_string(TicketReason r);

struct Ticket {
  NodeId issuer = 0;
  NodeId subject_node = 0;
  PktId subject_packet = 0;  // 0 when the ticket targets a role holder
  SimTime issued_at = 0;
  TicketReason reason = TicketReason::PacketCountAnomaly;
};

struct Hello {};
struct Ack {};
struct EnergyQuery {};
struct EnergyReportMsg {
  Energy energy = 0;
};
struct SensingQuery {
  NodeId target_zone = 0;  // the ZO this query is routed to
};
struct WakeUpCoin {
  CoinId coin_id = 0;
  NodeId issuer = 0;
};
struct DataPacketMsg {
  Packet packet;
};
struct WarningTicketMsg {
  Ticket ticket;
};
struct SleepSignal {};
struct BlockNotice {
  NodeId subject = 0;
};

using MessageBody = std::variant<Hello, Ack, EnergyQuery, EnergyReportMsg, SensingQuery,
                                 WakeUpCoin, DataPacketMsg, WarningTicketMsg, SleepSignal,
                                 BlockNotice>;

struct Message {
  NodeId src = 0;
  NodeId dst = 0;
  SimTime sent_at = 0;
  bool forged = false;       // ground-truth marker for attacker traffic
  bool compromised = false;  // ground-truth marker for scripted misbehavior
  MessageBody body;
};

const char* message_kind(const Message& msg);
bool is_data_message(const Message& msg);

// Closed interval on the duty-cycle phase: sleep_start <= phase <= sleep_end,
// with the window allowed to wrap past the period boundary.
bool in_sleep_window(const SleepSchedule& schedule, SimTime t);

// Kept by each ZO: coins it issued to its zone members plus wake-up events it
// observed, bucketed in fixed t_interval windows (counts reset at rollover).
class CoinLedger {
 public:
  void note_issued(NodeId sn, CoinId coin);
  bool is_issued(NodeId sn, CoinId coin) const;
  // Record one observed wake-up event. The ZO only learns of wake-ups through
  // the reply traffic, so callers must not count deliveries the SN ignored.
  void count_wake(NodeId sn, bool solicited);
  // A coin reached a responsive SN; solicited iff this ledger issued that coin
  // id. Returns whether the coin was solicited.
  bool note_delivery(NodeId sn, CoinId coin);
  int wake_count(NodeId sn) const;
  int unsolicited_count(NodeId sn) const;
  void rollover();

 private:
  std::map<NodeId, std::set<CoinId>> issued_;
  std::map<NodeId, int> wake_events_;
  std::map<NodeId, int> unsolicited_;
};

}  // namespace segnet
