#include "segnet/types.hpp"

#include <algorithm>
#include <cmath>

namespace segnet {

double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

const char* to_string(NodeCategory c) {
  switch (c) {
    case NodeCategory::Base: return "base";
    case NodeCategory::Intelligent: return "intelligent";
    case NodeCategory::Simple: return "simple";
  }
  return "?";
}

const char* to_string(Designation d) {
  switch (d) {
    case Designation::GN: return "GN";
    case Designation::CO: return "CO";
    case Designation::MN: return "MN";
    case Designation::ZO: return "ZO";
    case Designation::SN: return "SN";
    case Designation::Unassigned: return "unassigned";
  }
  return "?";
}

const char* to_string(PowerMode m) {
  return m == PowerMode::Awake ? "awake" : "asleep";
}

const char* to_string(Disposition d) {
  switch (d) {
    case Disposition::Normal: return "normal";
    case Disposition::Observed: return "observed";
    case Disposition::Blocked: return "blocked";
    case Disposition::Dead: return "dead";
  }
  return "?";
}

bool RoleAssignment::is_mn(NodeId id) const {
  return std::find(mns.begin(), mns.end(), id) != mns.end();
}

bool RoleAssignment::is_zo(NodeId id) const {
  return std::find(zos.begin(), zos.end(), id) != zos.end();
}

NodeId RoleAssignment::zone_owner(NodeId sn) const {
  for (const auto& [zo, members] : zones) {
    if (members.count(sn) != 0) return zo;
  }
  return 0;
}

}  // namespace segnet
