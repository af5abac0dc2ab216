// Latency-driven fan-out group formation and slice-window packing.

#include "doctest.h"

#include <set>
#include <stdexcept>

#include "lscomp/grouping.hpp"

using namespace lscomp;

namespace {

/// Row of isolated data patches at (1, 2*i+1) on a 3-row strip: merge paths
/// get longer (but no costlier than 4) with qubit distance, so planning
/// latencies are driven by alignment and turn pricing.
LayoutGrid row_grid(int n_qubits, int extra_cols = 0) {
    LayoutGrid g(3, 2 * n_qubits + 1 + extra_cols);
    for (int q = 0; q < n_qubits; ++q) {
        Coord c{1, 2 * q + 1};
        g.at(c).role = CellRole::DATA;
        g.place_qubit(q, c);
    }
    return g;
}

Gate cp(int id, int a, int b, double angle = 0.5) {
    return {id, GateKind::CPHASE, a, b, angle};
}

std::multiset<int> gate_ids(const GroupPlan& plan) {
    std::multiset<int> ids;
    for (const FanoutGroup& g : plan.groups) {
        for (const GroupMember& m : g.members) ids.insert(m.gate_id);
        for (const PackedGate& p : g.packed) ids.insert(p.member.gate_id);
    }
    for (const GroupMember& m : plan.leftovers) ids.insert(m.gate_id);
    return ids;
}

} // namespace

TEST_SUITE("grouping") {

TEST_CASE("seed picks the costliest gate and absorbs its control's chain") {
    // Qubits 0,1,2 in a row; gate (0,2) spans two turns' worth of corridor
    // while (0,1) and (1,2) are direct.  Pricing turns makes (0,2) the seed.
    LayoutGrid g = row_grid(3);
    CostConfig cfg;
    cfg.c_flow_per_turn = Cycles{1, 2};

    std::vector<Gate> gates{cp(0, 0, 1), cp(1, 0, 2), cp(2, 1, 2)};
    REQUIRE(*gate_plan_cost(gates[1], g, cfg) > *gate_plan_cost(gates[0], g, cfg));

    GroupPlan plan = form_groups(gates, g, cfg);
    REQUIRE(plan.groups.size() == 2);
    CHECK(plan.groups[0].control == 0);
    CHECK(plan.groups[0].anchor_gate == 1);
    REQUIRE(plan.groups[0].members.size() == 2);
    CHECK(plan.groups[0].members[0].gate_id == 1);  // anchor first
    CHECK(plan.groups[0].members[1].gate_id == 0);
    CHECK(plan.groups[0].members[1].target == 1);
    REQUIRE(plan.groups[1].members.size() == 1);
    CHECK(plan.groups[1].members[0].gate_id == 2);

    CHECK(gate_ids(plan) == std::multiset<int>{0, 1, 2});
}

TEST_CASE("single gate groups under its first qubit") {
    LayoutGrid g = row_grid(2);
    CostConfig cfg;
    std::vector<Gate> gates{cp(0, 1, 0)};
    GroupPlan plan = form_groups(gates, g, cfg);
    REQUIRE(plan.groups.size() == 1);
    CHECK(plan.groups[0].control == 1);  // tie on both endpoints keeps q1
    CHECK(plan.groups[0].members[0].target == 0);
}

TEST_CASE("duplicate targets stay for a later group") {
    LayoutGrid g = row_grid(2);
    CostConfig cfg;
    // Two phases on the same pair commute; only one can merge per window.
    std::vector<Gate> gates{cp(0, 0, 1, 0.3), cp(1, 0, 1, 0.7)};
    GroupPlan plan = form_groups(gates, g, cfg);
    REQUIRE(plan.groups.size() == 2);
    CHECK(plan.groups[0].members.size() == 1);
    CHECK(plan.groups[1].members.size() == 1);
    CHECK(gate_ids(plan) == std::multiset<int>{0, 1});
}

TEST_CASE("form_groups rejects non-phase and unplaced input") {
    LayoutGrid g = row_grid(2);
    CostConfig cfg;
    std::vector<Gate> h{{0, GateKind::H, 0, -1, 0.0}};
    CHECK_THROWS_AS(form_groups(h, g, cfg), std::invalid_argument);
    std::vector<Gate> far{cp(0, 0, 5)};
    CHECK_THROWS(form_groups(far, g, cfg));
}

TEST_CASE("packing pulls a disjoint gate into the open window") {
    // Two independent pairs: (0,1) near, (2,3) far to the right.  The second
    // group's gate routes through cells the first footprint never touches,
    // so it packs into the first window.
    LayoutGrid g = row_grid(4);
    CostConfig cfg;
    std::vector<Gate> gates{cp(0, 0, 1), cp(1, 2, 3)};
    GroupPlan formed = form_groups(gates, g, cfg);
    REQUIRE(formed.groups.size() == 2);

    GroupPlan packed = pack_groups(formed, g, cfg);
    REQUIRE(packed.groups.size() == 1);
    CHECK(packed.groups[0].members.size() == 1);
    REQUIRE(packed.groups[0].packed.size() == 1);
    CHECK(packed.groups[0].packed[0].member.gate_id == 1);
    CHECK(gate_ids(packed) == std::multiset<int>{0, 1});

    // Admission is latency-neutral: the pulled gate cannot slow the window.
    CHECK(packed.groups[0].packed[0].plan_cost <= packed.groups[0].plan_latency);
}

TEST_CASE("packing refuses role conflicts") {
    LayoutGrid g = row_grid(3);
    CostConfig cfg;
    // (1,2) shares qubit 1 with the first group's target: must not pack.
    std::vector<Gate> gates{cp(0, 0, 1), cp(1, 1, 2)};
    GroupPlan packed = pack_groups(form_groups(gates, g, cfg), g, cfg);
    REQUIRE(packed.groups.size() == 2);
    CHECK(packed.groups[0].packed.empty());
    CHECK(gate_ids(packed) == std::multiset<int>{0, 1});
}

TEST_CASE("packed plans carry footprints and bottleneck latency") {
    LayoutGrid g = row_grid(4);
    CostConfig cfg;
    std::vector<Gate> gates{cp(0, 0, 1), cp(1, 0, 2), cp(2, 0, 3)};
    GroupPlan packed = pack_groups(form_groups(gates, g, cfg), g, cfg);
    REQUIRE(packed.groups.size() == 1);
    const FanoutGroup& grp = packed.groups[0];
    REQUIRE(grp.footprint.has_value());
    CHECK(grp.members.size() == 3);
    CHECK(grp.footprint->root == g.qubit_cell(0));

    Cycles bottleneck{0};
    for (std::size_t t = 0; t < grp.members.size(); ++t) {
        Cycles c = merge_cost(grp.footprint->root_to_terminal_paths[t], g, cfg).total;
        bottleneck = Cycles::max(bottleneck, c);
    }
    CHECK(grp.plan_latency == bottleneck);
}

TEST_CASE("group plan serializes to json") {
    LayoutGrid g = row_grid(3);
    CostConfig cfg;
    std::vector<Gate> gates{cp(0, 0, 1), cp(1, 0, 2)};
    GroupPlan packed = pack_groups(form_groups(gates, g, cfg), g, cfg);
    std::string js = group_plan_to_json(packed);
    CHECK(js.find("\"control\": 0") != std::string::npos);
    CHECK(js.find("\"footprint\"") != std::string::npos);
}

} // TEST_SUITE
