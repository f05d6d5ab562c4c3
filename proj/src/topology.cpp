#include "segnet/topology.hpp"

#include <algorithm>

namespace segnet {

Network deploy(const std::vector<NodeSpec>& specs, double radio_range) {
  if (radio_range <= 0.0) throw ConfigError("radio_range must be positive");
  Network net;
  net.radio_range = radio_range;
  int base_count = 0;
  for (const auto& spec : specs) {
    if (net.contains(spec.id)) {
      throw ConfigError("duplicate node id " + std::to_string(spec.id));
    }
    if (spec.category == NodeCategory::Base) ++base_count;
    if (spec.join_time > 0) continue;  // joins later via the kernel
    net.nodes.emplace(spec.id, instantiate_node(spec, 0));
  }
  if (net.nodes.empty()) throw ConfigError("scenario deploys zero nodes");
  if (base_count != 1) {
    throw ConfigError("scenario must contain exactly one base (GN) node, found " +
                      std::to_string(base_count));
  }
  return net;
}

NodeState instantiate_node(const NodeSpec& spec, SimTime now) {
  NodeState node;
  node.id = spec.id;
  node.pos = spec.pos;
  node.category = spec.category;
  node.desig = spec.category == NodeCategory::Base ? Designation::GN : Designation::Unassigned;
  node.power = PowerMode::Awake;
  node.energy = spec.initial_energy;
  node.initial_energy = spec.initial_energy;
  node.joined_at = now;
  return node;
}

bool in_range(const Network& net, NodeId a, NodeId b) {
  return distance(net.at(a).pos, net.at(b).pos) <= net.radio_range;
}

int node_degree(const Network& net, NodeId id) {
  int deg = 0;
  for (const auto& [other, node] : net.nodes) {
    if (other == id || !node.usable()) continue;
    if (in_range(net, id, other)) ++deg;
  }
  return deg;
}

std::set<NodeId> discover_neighbors(const Network& net, NodeId origin, SimTime timer,
                                    SimTime hop_latency) {
  const NodeState& o = net.at(origin);
  if (!o.alive()) throw ProtocolError("discovery from dead node " + std::to_string(origin));
  if (o.blocked()) throw ProtocolError("discovery from blocked node " + std::to_string(origin));
  std::set<NodeId> result;
  if (2 * hop_latency > timer) return result;  // no ack can beat the timer
  for (const auto& [id, node] : net.nodes) {
    if (id == origin || !node.usable()) continue;
    if (in_range(net, origin, id)) result.insert(id);
  }
  return result;
}

ClassifyResult classify_nodes(Energy gn_energy,
                              const std::vector<std::pair<NodeId, Energy>>& members,
                              std::int64_t mu_milli) {
  if (mu_milli <= 0) throw ConfigError("mu must be positive");
  ClassifyResult result;
  for (const auto& [id, energy] : members) {
    // E_N > (1/mu) * E_GN  <=>  E_N * mu > E_GN
    if (energy * mu_milli > gn_energy * kMilli) {
      result.intelligent.insert(id);
    } else {
      result.simple.insert(id);
    }
  }
  return result;
}

namespace {

std::vector<NodeId> usable_intelligent(const Network& net, const std::set<NodeId>& pool) {
  std::vector<NodeId> out;
  for (NodeId id : pool) {
    const NodeState& node = net.at(id);
    if (node.usable() && node.category == NodeCategory::Intelligent) out.push_back(id);
  }
  return out;
}

void assign_role(Network& net, NodeId id, Designation desig) {
  NodeState& node = net.at(id);
  node.desig = desig;
  node.maturity = 1;
  node.detection_enabled = true;
}

}  // namespace

NodeId select_co(Network& net, const std::set<NodeId>& gn_neighbors,
                 const std::set<NodeId>& candidates, std::mt19937_64& rng,
                 bool prefer_fresh) {
  std::vector<NodeId> cands;
  for (NodeId id : candidates) {
    if (net.at(id).usable()) cands.push_back(id);
  }
  if (cands.empty()) throw ElectionError("no CO candidate among GN neighbors");

  int max_deg = 0;
  Energy max_energy = 0;
  for (NodeId id : gn_neighbors) {
    if (!net.at(id).usable()) continue;
    max_deg = std::max(max_deg, node_degree(net, id));
    max_energy = std::max(max_energy, net.at(id).energy);
  }

  std::vector<NodeId> joint;
  for (NodeId id : cands) {
    if (node_degree(net, id) >= max_deg && net.at(id).energy >= max_energy) {
      joint.push_back(id);
    }
  }

  const bool have_joint = !joint.empty();
  std::vector<NodeId> pool = have_joint ? joint : cands;
  if (prefer_fresh) {
    std::vector<NodeId> fresh;
    for (NodeId id : pool) {
      if (net.at(id).maturity == 0) fresh.push_back(id);
    }
    if (!fresh.empty()) pool = fresh;
  }

  NodeId winner;
  if (have_joint) {
    // Joint-maxima candidates genuinely tie, so this is the one seeded draw.
    winner = pool.size() == 1
                 ? pool.front()
                 : pool[static_cast<std::size_t>(rng() % pool.size())];
  } else {
    std::sort(pool.begin(), pool.end(), [&](NodeId a, NodeId b) {
      const int da = node_degree(net, a), db = node_degree(net, b);
      if (da != db) return da > db;
      const Energy ea = net.at(a).energy, eb = net.at(b).energy;
      if (ea != eb) return ea > eb;
      return a < b;
    });
    winner = pool.front();
  }
  assign_role(net, winner, Designation::CO);
  return winner;
}

ClusterSets form_cluster(const Network& net, NodeId co, SimTime timer, SimTime hop_latency) {
  const NodeState& owner = net.at(co);
  if (!owner.alive()) throw ElectionError("CO died during cluster formation");
  if (owner.blocked()) throw ElectionError("CO blocked during cluster formation");
  ClusterSets sets;
  if (2 * hop_latency > timer) return sets;
  for (const auto& [id, node] : net.nodes) {
    if (id == co || !node.usable() || node.desig == Designation::GN) continue;
    if (!in_range(net, co, id)) continue;
    sets.members.insert(id);
    if (node.category == NodeCategory::Simple) sets.simple_members.insert(id);
  }
  return sets;
}

std::vector<NodeId> select_mns(Network& net, NodeId co, const std::set<NodeId>& cluster,
                               int k, bool prefer_fresh, std::vector<std::string>* warnings) {
  std::vector<NodeId> pool = usable_intelligent(net, cluster);
  const Position& co_pos = net.at(co).pos;
  std::sort(pool.begin(), pool.end(), [&](NodeId a, NodeId b) {
    if (prefer_fresh && net.at(a).maturity != net.at(b).maturity) {
      return net.at(a).maturity < net.at(b).maturity;
    }
    const double da = distance(net.at(a).pos, co_pos);
    const double db = distance(net.at(b).pos, co_pos);
    if (da != db) return da < db;
    const Energy ea = net.at(a).energy, eb = net.at(b).energy;
    if (ea != eb) return ea > eb;
    return a < b;
  });
  if (static_cast<int>(pool.size()) > k) pool.resize(static_cast<std::size_t>(k));
  if (static_cast<int>(pool.size()) < k && warnings != nullptr) {
    warnings->push_back("degraded monitoring: only " + std::to_string(pool.size()) +
                        " of " + std::to_string(k) + " monitor nodes available");
  }
  for (NodeId id : pool) assign_role(net, id, Designation::MN);
  return pool;
}

std::vector<NodeId> select_zos(Network& net, NodeId co, const std::set<NodeId>& cluster,
                               int z, bool prefer_fresh, std::vector<std::string>* warnings) {
  (void)co;
  std::vector<NodeId> pool;
  for (NodeId id : usable_intelligent(net, cluster)) {
    if (net.at(id).desig != Designation::MN) pool.push_back(id);
  }
  if (pool.empty()) throw ElectionError("no zone owner candidate in cluster");
  std::sort(pool.begin(), pool.end(), [&](NodeId a, NodeId b) {
    if (prefer_fresh && net.at(a).maturity != net.at(b).maturity) {
      return net.at(a).maturity < net.at(b).maturity;
    }
    const int da = node_degree(net, a), db = node_degree(net, b);
    if (da != db) return da > db;
    const Energy ea = net.at(a).energy, eb = net.at(b).energy;
    if (ea != eb) return ea > eb;
    return a < b;
  });
  if (static_cast<int>(pool.size()) > z) pool.resize(static_cast<std::size_t>(z));
  if (static_cast<int>(pool.size()) < z && warnings != nullptr) {
    warnings->push_back("degraded zoning: only " + std::to_string(pool.size()) + " of " +
                        std::to_string(z) + " zone owners available");
  }
  for (NodeId id : pool) assign_role(net, id, Designation::ZO);
  return pool;
}

std::map<NodeId, std::set<NodeId>> form_zones(const Network& net,
                                              const std::vector<NodeId>& zos,
                                              std::set<NodeId>* unreachable) {
  std::map<NodeId, std::set<NodeId>> zones;
  for (NodeId zo : zos) zones[zo];
  for (const auto& [id, node] : net.nodes) {
    if (node.category != NodeCategory::Simple || !node.usable()) continue;
    NodeId best = 0;
    double best_dist = 0.0;
    for (NodeId zo : zos) {
      if (!net.at(zo).usable()) continue;
      const double d = distance(node.pos, net.at(zo).pos);
      if (d > net.radio_range) continue;
      if (best == 0 || d < best_dist || (d == best_dist && zo < best)) {
        best = zo;
        best_dist = d;
      }
    }
    if (best != 0) {
      zones[best].insert(id);
    } else if (unreachable != nullptr) {
      unreachable->insert(id);
    }
  }
  return zones;
}

RoleAssignment elect_roles(Network& net, const ElectionParams& params, std::mt19937_64& rng,
                           bool prefer_fresh, std::vector<std::string>* warnings,
                           bool degrade_on_zo_failure) {
  RoleAssignment roles;
  roles.gn = params.gn;
  roles.g_neighbors =
      discover_neighbors(net, params.gn, params.discovery_timer, params.hop_latency);

  std::set<NodeId> candidates;
  for (NodeId id : roles.g_neighbors) {
    if (net.at(id).category == NodeCategory::Intelligent) candidates.insert(id);
  }
  roles.co = select_co(net, roles.g_neighbors, candidates, rng, prefer_fresh);

  const ClusterSets cluster =
      form_cluster(net, roles.co, params.discovery_timer, params.hop_latency);
  roles.cluster_members = cluster.members;
  roles.simple_members = cluster.simple_members;

  roles.mns = select_mns(net, roles.co, cluster.members, params.k_mn, prefer_fresh, warnings);
  if (degrade_on_zo_failure) {
    try {
      roles.zos =
          select_zos(net, roles.co, cluster.members, params.z_zo, prefer_fresh, warnings);
    } catch (const ElectionError& e) {
      if (warnings != nullptr) warnings->push_back(std::string("degraded: ") + e.what());
      roles.zos.clear();
    }
  } else {
    roles.zos = select_zos(net, roles.co, cluster.members, params.z_zo, prefer_fresh, warnings);
  }
  roles.zones = form_zones(net, roles.zos, &roles.unreachable_sns);
  return roles;
}

RoleAssignment reconfigure(Network& net, const ElectionParams& params, std::mt19937_64& rng,
                           std::vector<std::string>* warnings) {
  for (auto& [id, node] : net.nodes) {
    (void)id;
    if (node.desig == Designation::CO || node.desig == Designation::MN ||
        node.desig == Designation::ZO) {
      node.desig = Designation::Unassigned;
      node.detection_enabled = false;
    }
  }
  try {
    return elect_roles(net, params, rng, /*prefer_fresh=*/true, warnings,
                       /*degrade_on_zo_failure=*/true);
  } catch (const ElectionError& e) {
    if (warnings != nullptr) {
      warnings->push_back(std::string("degraded: reconfiguration failed: ") + e.what());
    }
    RoleAssignment degraded;
    degraded.gn = params.gn;
    return degraded;
  }
}

}  // namespace segnet
