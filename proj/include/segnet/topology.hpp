#pragma once

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "segnet/types.hpp"

namespace segnet {

struct NodeSpec {
  NodeId id = 0;
  Position pos;
  NodeCategory category = NodeCategory::Simple;
  Energy initial_energy = 0;
  SimTime join_time = 0;
};

// Instantiates the t=0 population: every node Awake, Unassigned except the
// base node which holds GN, full energy, maturity 0.
Network deploy(const std::vector<NodeSpec>& specs, double radio_range);
NodeState instantiate_node(const NodeSpec& spec, SimTime now);

bool in_range(const Network& net, NodeId a, NodeId b);

// Number of usable (alive, non-blocked) nodes within radio range.
int node_degree(const Network& net, NodeId id);

// Alive, non-blocked nodes in range of origin whose ack round-trip fits the
// discovery timer. The latency model is constant per hop, so the timer check
// is uniform: 2*hop_latency <= timer.
std::set<NodeId> discover_neighbors(const Network& net, NodeId origin, SimTime timer,
                                    SimTime hop_latency);

struct ClassifyResult {
  std::set<NodeId> intelligent;
  std::set<NodeId> simple;
};

// Intelligent iff E_N > (1/mu) * E_GN, in exact fixed point.
ClassifyResult classify_nodes(Energy gn_energy,
                              const std::vector<std::pair<NodeId, Energy>>& members,
                              std::int64_t mu_milli);

struct ElectionParams {
  NodeId gn = 0;
  int k_mn = 6;
  int z_zo = 2;
  SimTime discovery_timer = 0;
  SimTime hop_latency = 0;
};

// Joint-maxima rule over the GN neighborhood (degree and residual energy),
// fresh candidates preferred, remaining ties settled by a seeded draw; falls
// back to lexicographic (degree desc, energy desc, id asc) when nobody attains
// both maxima. Mutates the winner: desig=CO, maturity=1.
NodeId select_co(Network& net, const std::set<NodeId>& gn_neighbors,
                 const std::set<NodeId>& candidates, std::mt19937_64& rng,
                 bool prefer_fresh);

struct ClusterSets {
  std::set<NodeId> members;
  std::set<NodeId> simple_members;
};

ClusterSets form_cluster(const Network& net, NodeId co, SimTime timer, SimTime hop_latency);

// Top-k intelligent cluster members by (distance to CO asc, energy desc, id
// asc); with prefer_fresh, maturity 0 sorts first. Fewer than k selects all
// and appends a degraded-monitoring warning.
std::vector<NodeId> select_mns(Network& net, NodeId co, const std::set<NodeId>& cluster,
                               int k, bool prefer_fresh, std::vector<std::string>* warnings);

// Top-z intelligent non-MN members by (degree desc, energy desc, id asc).
// Empty pool is an election error; a short pool selects all with a warning.
std::vector<NodeId> select_zos(Network& net, NodeId co, const std::set<NodeId>& cluster,
                               int z, bool prefer_fresh, std::vector<std::string>* warnings);

// Nearest in-range ZO per sensing node, ties to the lower ZO id. Unassigned
// sensing nodes are reported, not errors.
std::map<NodeId, std::set<NodeId>> form_zones(const Network& net,
                                              const std::vector<NodeId>& zos,
                                              std::set<NodeId>* unreachable);

// Full election pass shared by initialization and reconfiguration. Throws
// ElectionError when no CO candidate exists, and on an empty ZO pool unless
// degrade_on_zo_failure allows finishing without zone owners.
RoleAssignment elect_roles(Network& net, const ElectionParams& params, std::mt19937_64& rng,
                           bool prefer_fresh, std::vector<std::string>* warnings,
                           bool degrade_on_zo_failure = false);

// Clears current role holders (detection off, desig reset), then re-runs the
// election with fresh nodes preferred. Election failure degrades instead of
// throwing: the returned assignment may lack a CO or ZOs.
RoleAssignment reconfigure(Network& net, const ElectionParams& params, std::mt19937_64& rng,
                           std::vector<std::string>* warnings);

}  // namespace segnet
