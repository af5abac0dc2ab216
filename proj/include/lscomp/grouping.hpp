// grouping.hpp
//
// Latency-anchored multi-target group formation and the two-phase packing
// pass.  A commuting layer of controlled-phase gates is partitioned into
// fan-out groups (one control, many targets, one shared Steiner footprint);
// packing then pulls compatible gates from later groups into earlier slice
// windows when they route through untouched ancilla without raising the
// group's bottleneck latency.

#ifndef LSCOMP_GROUPING_HPP
#define LSCOMP_GROUPING_HPP

#include <optional>
#include <string>
#include <vector>

#include "lscomp/circuit.hpp"
#include "lscomp/cost_model.hpp"
#include "lscomp/cycles.hpp"
#include "lscomp/layout.hpp"
#include "lscomp/routing.hpp"

namespace lscomp {

/// One controlled-phase gate oriented inside a group: `control` is the shared
/// fan-out qubit of the owning group (or the origin group for packed gates).
struct GroupMember {
    int gate_id = -1;
    int control = -1;
    int target = -1;
    double angle = 0.0;  // controlled-phase angle of the source gate
};

/// Gate pulled in from a later group; merges point-to-point over its own
/// reserved route inside the host group's slice window.
struct PackedGate {
    GroupMember member;
    Route route;       // committed at pack time, disjoint from the footprint
    Cycles plan_cost;  // merge cost on the planning snapshot
};

struct FanoutGroup {
    int index = -1;
    int control = -1;     // shared control qubit c_k
    int anchor_gate = -1; // bottleneck member (max planning latency)
    std::vector<GroupMember> members;  // anchor first, rest in gate-id order
    std::vector<PackedGate> packed;
    std::optional<SteinerFootprint> footprint;  // set by pack_groups
    Cycles plan_latency;  // max member merge cost on the planning snapshot
};

/// Partition of one commuting layer: every two-qubit gate sits in exactly one
/// group or in the leftover list (point-to-point fallback).
struct GroupPlan {
    int layer = -1;
    std::vector<FanoutGroup> groups;
    std::vector<GroupMember> leftovers;
};

/// Latency-based group formation.  Repeats until the pool is empty: rank the
/// remaining gates by their empty-grid merge cost L(g), seed a group with the
/// argmax (ties to the lowest gate id), pick as control the seed endpoint
/// whose remaining-gate latency maximum is larger (ties to the seed's first
/// qubit), then absorb every remaining gate touching that control except ones
/// whose far endpoint already appears as a target.  Gates must all be
/// controlled-phase over placed qubits.
GroupPlan form_groups(const std::vector<Gate>& gates, const LayoutGrid& grid,
                      const CostConfig& config);

/// Two-phase packing.  For each group in plan order: build the shared Steiner
/// footprint (control cell to target cells) on a fresh reservation overlay,
/// then scan gates of later groups in (group, gate-id) order and pull each in
/// iff its qubits are disjoint from every qubit already in the group, a BFS
/// route exists through cells the overlay has not reserved, and its route
/// cost does not exceed the group's bottleneck latency.  Groups emptied by
/// pulls are dropped; a group whose footprint cannot be built dissolves into
/// point-to-point leftovers.
GroupPlan pack_groups(const GroupPlan& plan, const LayoutGrid& grid, const CostConfig& config);

/// L(g): merge cost of the lexicographic shortest path between the gate's
/// patches on an otherwise empty grid; nullopt when no route exists.
std::optional<Cycles> gate_plan_cost(const Gate& gate, const LayoutGrid& grid,
                                     const CostConfig& config);

/// Debug serialization for --dump-groups (pretty-printed JSON text).
std::string group_plan_to_json(const GroupPlan& plan);

} // namespace lscomp

#endif
