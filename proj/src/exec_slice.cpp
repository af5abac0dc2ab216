#include "lscomp/exec_slice.hpp"

#include <algorithm>
#include <stdexcept>

namespace lscomp {

namespace {

/// Shared slice-building state threaded through the per-slice helpers.
struct SliceBuilder {
    const LogicalCircuit& circuit;
    LayoutGrid& grid;
    const CostConfig& config;
    const RotationContext& ctx;
    SliceSchedule out{};
    Cycles t{0};
    int next_group = 0;

    void begin_slice() {
        if (!out.slices.empty()) {
            Interval reset;
            reset.start = t;
            reset.end = t + config.c_reset;
            reset.op_id = "reset" + std::to_string(out.slices.size() - 1);
            reset.kind = OpKind::RESET;
            out.events.intervals.push_back(reset);
            t = t + config.c_reset;
        }
    }

    /// One merge sweep (stage A or C) over a fixed footprint plus packed
    /// point routes: emits the intervals, commits orientations, returns the
    /// stage span.  Stage C additionally carries the local phase annotations.
    Cycles sweep(const FanoutGroup& group, int gid, Stage stage, const Cycles& start) {
        const SteinerFootprint& fp = *group.footprint;
        const char* suffix = stage == Stage::A ? ".a" : ".c";

        Cycles tree_span{0};
        for (const auto& path : fp.root_to_terminal_paths)
            tree_span = Cycles::max(tree_span, merge_cost(path, grid, config).total);

        Interval tree;
        tree.start = start;
        tree.end = start + tree_span;
        tree.op_id = "grp" + std::to_string(gid) + suffix;
        tree.group = gid;
        tree.stage = stage;
        tree.kind = OpKind::MERGE;
        tree.cells.push_back(grid.qubit_cell(group.control));
        for (const Coord& c : fp.tree_cells) tree.cells.push_back(c);
        tree.qubits.push_back(group.control);
        for (const GroupMember& m : group.members) {
            tree.cells.push_back(grid.qubit_cell(m.target));
            tree.qubits.push_back(m.target);
            tree.gate_ids.push_back(m.gate_id);
            tree.ops.push_back({SemanticOp::Kind::CNOT, group.control, m.target, 0.0});
        }
        if (stage == Stage::C)
            for (const GroupMember& m : group.members) {
                double phase = m.angle / 2;
                tree.ops.push_back({SemanticOp::Kind::RZ, group.control, -1, phase});
                tree.ops.push_back({SemanticOp::Kind::RZ, m.target, -1, phase});
            }
        out.events.intervals.push_back(tree);

        Cycles span = tree_span;
        for (const PackedGate& p : group.packed) {
            std::vector<Coord> path = p.route.full_path();
            Cycles cost = merge_cost(path, grid, config).total;
            span = Cycles::max(span, cost);

            Interval iv;
            iv.start = start;
            iv.end = start + cost;
            iv.op_id = "g" + std::to_string(p.member.gate_id) + suffix;
            iv.group = gid;
            iv.stage = stage;
            iv.kind = OpKind::MERGE;
            iv.cells = path;
            iv.qubits = {p.member.control, p.member.target};
            iv.gate_ids = {p.member.gate_id};
            iv.ops = {{SemanticOp::Kind::CNOT, p.member.control, p.member.target, 0.0}};
            if (stage == Stage::C) {
                double phase = p.member.angle / 2;
                iv.ops.push_back({SemanticOp::Kind::RZ, p.member.control, -1, phase});
                iv.ops.push_back({SemanticOp::Kind::RZ, p.member.target, -1, phase});
            }
            out.events.intervals.push_back(iv);
        }

        for (const auto& path : fp.root_to_terminal_paths) commit_path_orientation(grid, path);
        for (const PackedGate& p : group.packed) commit_path_orientation(grid, p.route.full_path());
        return span;
    }

    void group_slice(const FanoutGroup& group, int layer) {
        begin_slice();
        int gid = next_group++;
        Cycles span_a = sweep(group, gid, Stage::A, t);

        std::vector<RzJob> jobs;
        for (const GroupMember& m : group.members)
            jobs.push_back(make_rz_job(m.gate_id, m.target, -m.angle / 2, ctx));
        for (const PackedGate& p : group.packed)
            jobs.push_back(make_rz_job(p.member.gate_id, p.member.target, -p.member.angle / 2, ctx));
        StageBResult b = realize_stage_b(jobs, grid, config, ctx, t + span_a, gid);
        for (Interval& iv : b.intervals) out.events.intervals.push_back(std::move(iv));

        Cycles span_c = sweep(group, gid, Stage::C, t + span_a + b.span);

        SliceInfo info;
        info.index = (int)out.slices.size();
        info.group = gid;
        info.kind = "group";
        info.layer = layer;
        info.span_a = span_a;
        info.span_b = b.span;
        info.span_c = span_c;
        info.total = span_a + b.span + span_c;
        out.slices.push_back(info);
        t = t + info.total;
    }

    void point_slice(const GroupMember& m, int layer) {
        begin_slice();
        int gid = next_group++;
        auto route = bfs_route(grid, grid.qubit_cell(m.control), grid.qubit_cell(m.target));
        if (!route)
            throw std::runtime_error("execute_slices: gate " + std::to_string(m.gate_id) +
                                     " is unroutable on an empty grid");
        // A degenerate one-member group reuses the sweep machinery.
        FanoutGroup solo;
        solo.control = m.control;
        solo.members = {m};
        SteinerFootprint fp;
        fp.root = route->src;
        fp.terminals = {route->dst};
        fp.tree_cells = route->cells;
        fp.root_to_terminal_paths = {route->full_path()};
        solo.footprint = fp;

        Cycles span_a = sweep(solo, gid, Stage::A, t);
        std::vector<RzJob> jobs{make_rz_job(m.gate_id, m.target, -m.angle / 2, ctx)};
        StageBResult b = realize_stage_b(jobs, grid, config, ctx, t + span_a, gid);
        for (Interval& iv : b.intervals) out.events.intervals.push_back(std::move(iv));
        Cycles span_c = sweep(solo, gid, Stage::C, t + span_a + b.span);

        SliceInfo info;
        info.index = (int)out.slices.size();
        info.group = gid;
        info.kind = "point";
        info.layer = layer;
        info.span_a = span_a;
        info.span_b = b.span;
        info.span_c = span_c;
        info.total = span_a + b.span + span_c;
        out.slices.push_back(info);
        t = t + info.total;
    }

    void singles_slice(const std::vector<const Gate*>& singles, int layer) {
        begin_slice();
        Cycles span{0};
        std::vector<RzJob> jobs;
        for (const Gate* g : singles) {
            if (g->kind == GateKind::H) {
                Interval iv;
                iv.start = t;
                iv.end = t + config.t_h;
                iv.op_id = "g" + std::to_string(g->id);
                iv.kind = OpKind::INPLACE;
                iv.cells = {grid.qubit_cell(g->q1)};
                iv.qubits = {g->q1};
                iv.gate_ids = {g->id};
                iv.ops = {{SemanticOp::Kind::H, g->q1, -1, 0.0}};
                out.events.intervals.push_back(iv);
                span = Cycles::max(span, config.t_h);
            } else {
                jobs.push_back(make_rz_job(g->id, g->q1, g->angle, ctx));
            }
        }
        if (!jobs.empty()) {
            // Same-layer singles touch pairwise distinct qubits, so the
            // rotations run beside the H wave rather than after it.
            StageBResult b = realize_stage_b(jobs, grid, config, ctx, t, next_group);
            ++next_group;
            for (Interval& iv : b.intervals) out.events.intervals.push_back(std::move(iv));
            span = Cycles::max(span, b.span);
        }

        SliceInfo info;
        info.index = (int)out.slices.size();
        info.kind = "singles";
        info.layer = layer;
        info.span_b = span;
        info.total = span;
        out.slices.push_back(info);
        t = t + span;
    }
};

} // namespace

SliceSchedule execute_slices(const LogicalCircuit& circuit, const LayoutGrid& grid0,
                             const CostConfig& config, const RotationContext& ctx) {
    circuit.validate();
    config.validate();
    LogicalCircuit work = circuit;
    if (work.commuting_layers.empty() && !work.gates.empty()) assign_commuting_layers(work);
    LayoutGrid grid = grid0;

    SliceBuilder b{work, grid, config, ctx};
    for (std::size_t li = 0; li < work.commuting_layers.size(); ++li) {
        std::vector<Gate> cp;
        std::vector<const Gate*> singles;
        for (int gate_id : work.commuting_layers[li]) {
            const Gate& g = work.gates[gate_id];
            if (g.kind == GateKind::CPHASE)
                cp.push_back(g);
            else
                singles.push_back(&g);
        }
        if (!cp.empty()) {
            GroupPlan plan = pack_groups(form_groups(cp, grid, config), grid, config);
            plan.layer = (int)li;
            for (const FanoutGroup& group : plan.groups) b.group_slice(group, (int)li);
            for (const GroupMember& m : plan.leftovers) b.point_slice(m, (int)li);
            b.out.plans.push_back(std::move(plan));
        }
        if (!singles.empty()) b.singles_slice(singles, (int)li);
    }
    b.out.total_cycles = b.t;
    b.out.events.makespan = b.t;
    return b.out;
}

} // namespace lscomp
