#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "segnet/core.hpp"

namespace segnet {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Position& a, const Position& b);

enum class NodeCategory { Base, Intelligent, Simple };
enum class Designation { GN, CO, MN, ZO, SN, Unassigned };
enum class PowerMode { Awake, Asleep };

// Disposition only ever moves forward: Normal -> Observed -> Blocked -> Dead.
// Dead is reached from any state when the battery hits zero.
enum class Disposition { Normal, Observed, Blocked, Dead };

const char* to_string(NodeCategory c);
const char* to_string(Designation d);
const char* to_string(PowerMode m);
const char* to_string(Disposition d);

struct SleepSchedule {
  SimTime period = 0;
  SimTime sleep_start = 0;
  SimTime sleep_end = 0;
};

struct NodeState {
  NodeId id = 0;
  Position pos;
  NodeCategory category = NodeCategory::Simple;
  Designation desig = Designation::Unassigned;
  PowerMode power = PowerMode::Awake;
  Disposition disposition = Disposition::Normal;
  Energy energy = 0;
  Energy initial_energy = 0;
  int maturity = 0;  // 0 fresh, 1 has held a role; monotone
  bool detection_enabled = false;
  SimTime joined_at = 0;

  bool alive() const { return disposition != Disposition::Dead; }
  bool blocked() const { return disposition == Disposition::Blocked; }
  bool usable() const { return alive() && !blocked(); }
};

struct Network {
  std::map<NodeId, NodeState> nodes;  // ordered: iteration order is id order
  double radio_range = 0.0;

  NodeState& at(NodeId id) { return nodes.at(id); }
  const NodeState& at(NodeId id) const { return nodes.at(id); }
  bool contains(NodeId id) const { return nodes.count(id) != 0; }
};

struct RoleAssignment {
  NodeId gn = 0;
  NodeId co = 0;
  std::vector<NodeId> mns;                     // selection order
  std::vector<NodeId> zos;                     // selection order
  std::set<NodeId> cluster_members;            // C_neighbor
  std::set<NodeId> simple_members;             // SneighborCO
  std::map<NodeId, std::set<NodeId>> zones;    // zo -> sensing nodes
  std::set<NodeId> g_neighbors;
  std::set<NodeId> unreachable_sns;

  bool is_mn(NodeId id) const;
  bool is_zo(NodeId id) const;
  // Owning ZO of a sensing node, or 0 when unzoned.
  NodeId zone_owner(NodeId sn) const;
};

}  // namespace segnet
