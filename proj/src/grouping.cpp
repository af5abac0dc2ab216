#include "lscomp/grouping.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace lscomp {

namespace {

/// Later-than comparison treating nullopt as +infinity (unroutable gates
/// surface first so they fail fast into leftovers).
bool cost_less(const std::optional<Cycles>& a, const std::optional<Cycles>& b) {
    if (!b) return a.has_value();
    if (!a) return false;
    return *a < *b;
}

} // namespace

std::optional<Cycles> gate_plan_cost(const Gate& gate, const LayoutGrid& grid,
                                     const CostConfig& config) {
    auto route = bfs_route(grid, grid.qubit_cell(gate.q1), grid.qubit_cell(gate.q2));
    if (!route) return std::nullopt;
    return merge_cost(route->full_path(), grid, config).total;
}

GroupPlan form_groups(const std::vector<Gate>& gates, const LayoutGrid& grid,
                      const CostConfig& config) {
    for (const Gate& g : gates) {
        if (g.kind != GateKind::CPHASE)
            throw std::invalid_argument("form_groups: only controlled-phase gates group");
        grid.qubit_cell(g.q1);  // throws on unplaced qubits
        grid.qubit_cell(g.q2);
    }

    // The grid snapshot never changes during formation, so each gate's
    // planning latency is computed once up front.
    std::vector<std::optional<Cycles>> latency(gates.size());
    for (std::size_t i = 0; i < gates.size(); ++i)
        latency[i] = gate_plan_cost(gates[i], grid, config);

    std::vector<int> pool(gates.size());
    for (std::size_t i = 0; i < gates.size(); ++i) pool[int(i)] = int(i);

    GroupPlan plan;
    while (!pool.empty()) {
        // Seed: the remaining gate with the largest latency, ties to the
        // lowest gate id (pool is kept in id order).
        int seed = pool.front();
        for (int idx : pool)
            if (cost_less(latency[seed], latency[idx])) seed = idx;

        // Control: the seed endpoint whose worst remaining gate is costlier;
        // ties keep the seed's first qubit.
        auto endpoint_max = [&](int q) {
            std::optional<Cycles> worst;
            for (int idx : pool)
                if (gates[idx].q1 == q || gates[idx].q2 == q)
                    if (cost_less(worst, latency[idx])) worst = latency[idx];
            return worst;
        };
        const Gate& anchor = gates[seed];
        int control = cost_less(endpoint_max(anchor.q1), endpoint_max(anchor.q2))
                          ? anchor.q2
                          : anchor.q1;

        FanoutGroup group;
        group.index = int(plan.groups.size());
        group.control = control;
        group.anchor_gate = anchor.id;
        auto absorb = [&](int idx) {
            const Gate& g = gates[idx];
            group.members.push_back(
                {g.id, control, g.q1 == control ? g.q2 : g.q1, g.angle});
        };
        absorb(seed);
        std::vector<int> kept;
        for (int idx : pool) {
            if (idx == seed) continue;
            const Gate& g = gates[idx];
            int other = g.q1 == control ? g.q2 : (g.q2 == control ? g.q1 : -1);
            bool duplicate = false;
            for (const GroupMember& m : group.members) duplicate |= m.target == other;
            if (other < 0 || duplicate) {
                kept.push_back(idx);
                continue;
            }
            absorb(idx);
        }
        pool = std::move(kept);

        for (const GroupMember& m : group.members) {
            std::optional<Cycles> l;
            for (std::size_t i = 0; i < gates.size(); ++i)
                if (gates[i].id == m.gate_id) l = latency[i];
            if (l && group.plan_latency < *l) group.plan_latency = *l;
        }
        plan.groups.push_back(std::move(group));
    }
    return plan;
}

GroupPlan pack_groups(const GroupPlan& plan, const LayoutGrid& grid, const CostConfig& config) {
    GroupPlan out;
    out.layer = plan.layer;

    // Working copy of the member lists; pulls below erase from later groups.
    std::vector<std::vector<GroupMember>> members;
    for (const FanoutGroup& g : plan.groups) members.push_back(g.members);

    for (std::size_t gi = 0; gi < plan.groups.size(); ++gi) {
        if (members[gi].empty()) continue;  // emptied by an earlier pull

        FanoutGroup group;
        group.index = int(out.groups.size());
        group.control = plan.groups[gi].control;
        group.members = members[gi];

        // Shared footprint: control patch to every target patch.  Failure
        // dissolves the group into point-to-point leftovers.
        std::vector<Coord> terminals;
        for (const GroupMember& m : group.members)
            terminals.push_back(grid.qubit_cell(m.target));
        auto footprint = steiner_tree(grid, grid.qubit_cell(group.control), terminals);
        if (!footprint) {
            for (const GroupMember& m : group.members) out.leftovers.push_back(m);
            continue;
        }
        group.footprint = *footprint;

        // Bottleneck latency over the committed root-to-terminal paths.
        Cycles bottleneck;
        int anchor = group.members.front().gate_id;
        for (std::size_t t = 0; t < group.members.size(); ++t) {
            Cycles c = merge_cost(footprint->root_to_terminal_paths[t], grid, config).total;
            if (bottleneck < c) {
                bottleneck = c;
                anchor = group.members[t].gate_id;
            }
        }
        group.anchor_gate = anchor;
        group.plan_latency = bottleneck;

        // Reservation overlay for this slice window: footprint ancilla plus
        // the patches already merging.
        std::vector<Coord> reserved = footprint->tree_cells;
        std::set<int> busy_qubits{group.control};
        for (const GroupMember& m : group.members) busy_qubits.insert(m.target);

        // Pull compatible gates from later groups: plan order, id order.
        for (std::size_t gj = gi + 1; gj < plan.groups.size(); ++gj) {
            std::vector<GroupMember> stay;
            for (const GroupMember& cand : members[gj]) {
                bool disjoint = !busy_qubits.count(cand.control) && !busy_qubits.count(cand.target);
                std::optional<Route> route;
                if (disjoint)
                    route = bfs_route(grid, grid.qubit_cell(cand.control),
                                      grid.qubit_cell(cand.target), reserved);
                std::optional<Cycles> cost;
                if (route) {
                    Cycles c = merge_cost(route->full_path(), grid, config).total;
                    if (c <= bottleneck) cost = c;
                }
                if (!cost) {
                    stay.push_back(cand);
                    continue;
                }
                reserved.insert(reserved.end(), route->cells.begin(), route->cells.end());
                busy_qubits.insert(cand.control);
                busy_qubits.insert(cand.target);
                group.packed.push_back({cand, *route, *cost});
            }
            members[gj] = std::move(stay);
        }
        out.groups.push_back(std::move(group));
    }
    for (const GroupMember& m : plan.leftovers) out.leftovers.push_back(m);
    return out;
}

std::string group_plan_to_json(const GroupPlan& plan) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["layer"] = plan.layer;
    doc["groups"] = ordered_json::array();
    auto member_json = [](const GroupMember& m) {
        return ordered_json{{"gate", m.gate_id},
                            {"control", m.control},
                            {"target", m.target},
                            {"angle", m.angle}};
    };
    for (const FanoutGroup& g : plan.groups) {
        ordered_json jg;
        jg["index"] = g.index;
        jg["control"] = g.control;
        jg["anchor_gate"] = g.anchor_gate;
        jg["plan_latency"] = g.plan_latency.str();
        jg["members"] = ordered_json::array();
        for (const GroupMember& m : g.members) jg["members"].push_back(member_json(m));
        jg["packed"] = ordered_json::array();
        for (const PackedGate& p : g.packed) {
            ordered_json jp = member_json(p.member);
            jp["plan_cost"] = p.plan_cost.str();
            ordered_json cells = ordered_json::array();
            for (const Coord& c : p.route.cells) cells.push_back(to_string(c));
            jp["route"] = cells;
            jg["packed"].push_back(jp);
        }
        if (g.footprint) {
            ordered_json cells = ordered_json::array();
            for (const Coord& c : g.footprint->tree_cells) cells.push_back(to_string(c));
            jg["footprint"] = cells;
        }
        doc["groups"].push_back(jg);
    }
    doc["leftovers"] = ordered_json::array();
    for (const GroupMember& m : plan.leftovers) doc["leftovers"].push_back(member_json(m));
    return doc.dump(2) + "\n";
}

} // namespace lscomp
