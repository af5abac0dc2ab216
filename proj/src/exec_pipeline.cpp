#include "lscomp/exec_pipeline.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "lscomp/grouping.hpp"
#include "lscomp/routing.hpp"

namespace lscomp {

namespace {

/// A fan-out group in flight.  The footprint is fixed at formation time;
/// spans are re-priced on the live orientation map at each stage dispatch.
struct LiveGroup {
    int id = -1;
    int layer = -1;
    int control = -1;
    std::vector<GroupMember> members;
    SteinerFootprint fp;
    enum class Phase { A, B, C_WAIT, C, DONE } phase = Phase::A;
    std::vector<RzJob> jobs;  // stage-B work not yet dispatched
    int inflight = 0;         // stage-B work dispatched, not yet completed
    std::map<int, Coord> msc_site;    // target qubit -> pre-warmed site
    std::map<int, Cycles> msc_ready;  // target qubit -> first T available
};

/// Deferred state change at an interval's end: cells to free, orientations
/// to commit, locks to drop, gates to retire, plus the owner to advance.
struct Completion {
    enum class Kind { GROUP_A, GROUP_JOB, GROUP_C, SINGLE } kind = Kind::SINGLE;
    int group = -1;
    std::vector<Coord> release;
    std::vector<std::vector<Coord>> commits;
    std::vector<int> unlock;
    std::vector<int> done_gates;
};

struct Pipeline {
    const CostConfig& config;
    const RotationContext& ctx;
    LogicalCircuit circuit;
    LayoutGrid grid;

    std::vector<std::vector<int>> on_qubit;  // qubit -> gate ids, program order
    std::vector<std::vector<int>> layer_cp;  // layer -> ungrouped CPHASE ids
    std::vector<int> pending_h, pending_rz;  // unscheduled singles, id order
    std::vector<bool> done;
    std::vector<int> lock;  // qubit -> owner token, -1 free
    int gates_left = 0;

    std::vector<LiveGroup> groups;  // id == index
    std::map<std::pair<Cycles, long>, Completion> events;
    long seq = 0;
    PipelineSchedule out;

    Pipeline(const LogicalCircuit& c, const LayoutGrid& g0, const CostConfig& cfg,
             const RotationContext& rc)
        : config(cfg), ctx(rc), circuit(c), grid(g0) {
        circuit.validate();
        if (circuit.commuting_layers.empty()) assign_commuting_layers(circuit);
        on_qubit.resize(circuit.num_qubits);
        layer_cp.resize(circuit.commuting_layers.size());
        done.resize(circuit.gates.size(), false);
        lock.resize(circuit.num_qubits, -1);
        gates_left = (int)circuit.gates.size();
        for (const Gate& g : circuit.gates) {
            on_qubit[g.q1].push_back(g.id);
            if (g.q2 >= 0) on_qubit[g.q2].push_back(g.id);
            if (g.kind == GateKind::CPHASE)
                layer_cp[circuit.layer_of[g.id]].push_back(g.id);
            else if (g.kind == GateKind::H)
                pending_h.push_back(g.id);
            else
                pending_rz.push_back(g.id);
        }
    }

    void schedule_at(const Cycles& when, Completion c) { events[{when, seq++}] = std::move(c); }

    /// Program-order readiness: every earlier-layer gate sharing a qubit has
    /// completed.  Same-layer gates commute; locks arbitrate their overlap.
    bool gate_ready(int id) const {
        const Gate& g = circuit.gates[id];
        int layer = circuit.layer_of[id];
        for (int q : {g.q1, g.q2}) {
            if (q < 0) continue;
            for (int f : on_qubit[q])
                if (circuit.layer_of[f] < layer && !done[f]) return false;
        }
        return true;
    }

    bool qubits_free(const Gate& g) const {
        return lock[g.q1] < 0 && (g.q2 < 0 || lock[g.q2] < 0);
    }

    void must_reserve(const std::vector<Coord>& cells, int id) {
        ReserveResult r = grid.reserve_cells(cells, id);
        if (!r.ok)
            throw std::logic_error("execute_pipeline: reservation conflict on a freshly "
                                   "routed footprint");
    }

    void retire(const Completion& c) {
        grid.release_cells(c.release);
        for (const auto& path : c.commits) commit_path_orientation(grid, path);
        for (int q : c.unlock) lock[q] = -1;
        for (int g : c.done_gates)
            if (!done[g]) {
                done[g] = true;
                --gates_left;
            }
        switch (c.kind) {
            case Completion::Kind::GROUP_A:
                groups[c.group].phase = LiveGroup::Phase::B;
                break;
            case Completion::Kind::GROUP_JOB: {
                LiveGroup& g = groups[c.group];
                --g.inflight;
                if (g.phase == LiveGroup::Phase::B && g.jobs.empty() && g.inflight == 0)
                    g.phase = LiveGroup::Phase::C_WAIT;
                break;
            }
            case Completion::Kind::GROUP_C:
                groups[c.group].phase = LiveGroup::Phase::DONE;
                break;
            case Completion::Kind::SINGLE:
                break;
        }
    }

    // -- emission helpers ---------------------------------------------------

    /// Fan-out merge sweep over the group's fixed footprint, priced live.
    Cycles emit_sweep(const LiveGroup& g, Stage stage, const Cycles& start) {
        Cycles span{0};
        for (const auto& path : g.fp.root_to_terminal_paths)
            span = Cycles::max(span, merge_cost(path, grid, config).total);

        Interval tree;
        tree.start = start;
        tree.end = start + span;
        tree.op_id = "grp" + std::to_string(g.id) + (stage == Stage::A ? ".a" : ".c");
        tree.group = g.id;
        tree.stage = stage;
        tree.kind = OpKind::MERGE;
        tree.cells.push_back(grid.qubit_cell(g.control));
        for (const Coord& c : g.fp.tree_cells) tree.cells.push_back(c);
        tree.qubits.push_back(g.control);
        for (const GroupMember& m : g.members) {
            tree.cells.push_back(grid.qubit_cell(m.target));
            tree.qubits.push_back(m.target);
            tree.gate_ids.push_back(m.gate_id);
            tree.ops.push_back({SemanticOp::Kind::CNOT, g.control, m.target, 0.0});
        }
        if (stage == Stage::C)
            for (const GroupMember& m : g.members) {
                double phase = m.angle / 2;
                tree.ops.push_back({SemanticOp::Kind::RZ, g.control, -1, phase});
                tree.ops.push_back({SemanticOp::Kind::RZ, m.target, -1, phase});
            }
        out.events.intervals.push_back(std::move(tree));
        return span;
    }

    Interval job_interval(const RzJob& job, int group, const Cycles& start, const Cycles& end) {
        Interval iv;
        iv.start = start;
        iv.end = end;
        iv.op_id = "rz" + std::to_string(job.gate_id);
        iv.group = group;
        iv.stage = Stage::B;
        iv.qubits = {job.target};
        iv.gate_ids = {job.gate_id};
        iv.ops = {{SemanticOp::Kind::RZ, job.target, -1, job.angle}};
        return iv;
    }

    bool job_instant(const RzJob& job) const {
        if (ctx.regime == Regime::EFT_INJECT) return job.angle == 0.0;
        return job.decomposition.sequence.empty();
    }

    void emit_instant(const RzJob& job, int group, const Cycles& t) {
        Interval iv = job_interval(job, group, t, t);
        iv.kind = OpKind::INPLACE;
        iv.cells = {grid.qubit_cell(job.target)};
        out.events.intervals.push_back(std::move(iv));
    }

    // -- per-kind dispatchers ------------------------------------------------

    bool dispatch_inplace_h(const Cycles& t) {
        bool progress = false;
        std::vector<int> keep;
        for (int id : pending_h) {
            const Gate& g = circuit.gates[id];
            if (!gate_ready(id) || !qubits_free(g)) {
                keep.push_back(id);
                continue;
            }
            lock[g.q1] = 1000000 + id;
            Interval iv;
            iv.start = t;
            iv.end = t + config.t_h;
            iv.op_id = "g" + std::to_string(id);
            iv.kind = OpKind::INPLACE;
            iv.cells = {grid.qubit_cell(g.q1)};
            iv.qubits = {g.q1};
            iv.gate_ids = {id};
            iv.ops = {{SemanticOp::Kind::H, g.q1, -1, 0.0}};
            out.events.intervals.push_back(std::move(iv));
            Completion c;
            c.kind = Completion::Kind::SINGLE;
            c.unlock = {g.q1};
            c.done_gates = {id};
            schedule_at(t + config.t_h, std::move(c));
            progress = true;
        }
        pending_h = std::move(keep);
        return progress;
    }

    bool dispatch_stage_c(const Cycles& t) {
        bool progress = false;
        for (LiveGroup& g : groups) {
            if (g.phase != LiveGroup::Phase::C_WAIT) continue;
            ReserveResult r = grid.reserve_cells(g.fp.tree_cells, g.id);
            if (!r.ok) continue;  // footprint busy, retry at a later instant
            Cycles span = emit_sweep(g, Stage::C, t);
            Completion c;
            c.kind = Completion::Kind::GROUP_C;
            c.group = g.id;
            c.release = g.fp.tree_cells;
            c.commits = g.fp.root_to_terminal_paths;
            c.unlock.push_back(g.control);
            for (const GroupMember& m : g.members) {
                c.unlock.push_back(m.target);
                c.done_gates.push_back(m.gate_id);
            }
            schedule_at(t + span, std::move(c));
            g.phase = LiveGroup::Phase::C;
            progress = true;
        }
        return progress;
    }

    /// One stage-B job (group member or bare single).  Returns false when no
    /// site/route is available right now.  `single` carries the lock/done
    /// bookkeeping for bare rotations; group jobs retire via GROUP_JOB.
    bool try_rz_dispatch(const RzJob& job, int group, const Cycles& t, Completion base) {
        Coord target = grid.qubit_cell(job.target);
        Cycles end;
        Interval iv;
        switch (ctx.regime) {
            case Regime::EFT_INJECT: {
                auto site = choose_injection_site(target, grid, {});
                if (!site) return false;
                must_reserve({*site}, group >= 0 ? group : 1000000 + job.gate_id);
                end = t + config.t_rz_inject;
                iv = job_interval(job, group, t, end);
                iv.kind = OpKind::INJECT;
                iv.cells = {*site, target};
                out.events.intervals.push_back(std::move(iv));
                base.release = {*site};
                schedule_at(end, std::move(base));
                return true;
            }
            case Regime::FFT_MSD: {
                if (job.decomposition.n_t == 0) {
                    end = t + msd_tau(job, Cycles{0}, config);
                    iv = job_interval(job, group, t, end);
                    iv.kind = OpKind::INPLACE;  // pure S/H tail, no route
                    iv.cells = {target};
                    out.events.intervals.push_back(std::move(iv));
                    schedule_at(end, std::move(base));
                    return true;
                }
                auto sel = select_ms_patch(target, grid, config, config.ms_top_k, {});
                if (!sel) return false;
                std::vector<Coord> held = sel->route.cells;
                held.push_back(sel->route.dst);  // the magic-state patch itself
                must_reserve(held, group >= 0 ? group : 1000000 + job.gate_id);
                end = t + msd_tau(job, sel->chosen_cost, config);
                iv = job_interval(job, group, t, end);
                iv.kind = OpKind::T_ROUTE;
                iv.cells = sel->route.full_path();
                out.events.intervals.push_back(std::move(iv));
                base.release = held;
                base.commits = {sel->route.full_path()};
                schedule_at(end, std::move(base));
                return true;
            }
            case Regime::FFT_MSC: {
                Coord site;
                Cycles ready;
                LiveGroup* g = group >= 0 ? &groups[group] : nullptr;
                if (g && g->msc_site.count(job.target)) {
                    site = g->msc_site[job.target];  // pre-warmed at stage A
                    ready = g->msc_ready[job.target];
                } else {
                    auto s = choose_injection_site(target, grid, {});
                    if (!s) return false;
                    site = *s;
                    must_reserve({site}, group >= 0 ? group : 1000000 + job.gate_id);
                    ready = t + config.t_cult;
                }
                Cycles consume = msc_consume_cost(site, target, grid, config);
                MscTimeline tl = msc_walk(job.decomposition, t, ready, consume, config);
                iv = job_interval(job, group, t, tl.end);
                iv.kind = OpKind::MSC_CONSUME;
                iv.cells = {target};
                out.events.intervals.push_back(std::move(iv));
                for (std::size_t i = 0; i < tl.consumes.size(); ++i) {
                    Interval site_iv;
                    site_iv.start = tl.consumes[i].first;
                    site_iv.end = tl.consumes[i].second;
                    site_iv.op_id = "rz" + std::to_string(job.gate_id) + ".t" + std::to_string(i);
                    site_iv.group = group;
                    site_iv.stage = Stage::B;
                    site_iv.kind = OpKind::MSC_CONSUME;
                    site_iv.cells = {site};
                    site_iv.gate_ids = {job.gate_id};
                    out.events.intervals.push_back(std::move(site_iv));
                }
                for (std::size_t i = 0; i < tl.cultivations.size(); ++i) {
                    Interval cult;
                    cult.start = tl.cultivations[i].first;
                    cult.end = tl.cultivations[i].second;
                    cult.op_id = "cult" + std::to_string(job.gate_id) + "." + std::to_string(i);
                    cult.group = group;
                    cult.stage = Stage::NONE;
                    cult.kind = OpKind::MSC_CULTIVATE;
                    cult.cells = {site};
                    out.events.intervals.push_back(std::move(cult));
                }
                base.release = {site};
                schedule_at(tl.end, std::move(base));
                return true;
            }
        }
        return false;
    }

    bool dispatch_stage_b(const Cycles& t) {
        bool progress = false;
        for (LiveGroup& g : groups) {
            if (g.phase != LiveGroup::Phase::B) continue;
            std::vector<RzJob> keep;
            for (RzJob& job : g.jobs) {
                if (job_instant(job)) {
                    emit_instant(job, g.id, t);
                    if (g.msc_site.count(job.target)) {  // unused pre-warm
                        grid.release_cells({g.msc_site[job.target]});
                        g.msc_site.erase(job.target);
                    }
                    progress = true;
                    continue;
                }
                Completion base;
                base.kind = Completion::Kind::GROUP_JOB;
                base.group = g.id;
                if (try_rz_dispatch(job, g.id, t, std::move(base))) {
                    ++g.inflight;
                    progress = true;
                } else {
                    keep.push_back(std::move(job));
                }
            }
            g.jobs = std::move(keep);
            if (g.phase == LiveGroup::Phase::B && g.jobs.empty() && g.inflight == 0) {
                g.phase = LiveGroup::Phase::C_WAIT;
                progress = true;
            }
        }
        return progress;
    }

    /// Dynamic group formation on the live grid: among the startable gates of
    /// one layer, seed with the largest live latency, absorb targets while
    /// the Steiner footprint still routes, and claim the footprint at once.
    bool dispatch_stage_a(const Cycles& t) {
        bool progress = false;
        for (std::size_t li = 0; li < layer_cp.size(); ++li) {
            while (form_one_group(t, (int)li)) progress = true;
        }
        return progress;
    }

    bool form_one_group(const Cycles& t, int layer) {
        std::vector<int>& bucket = layer_cp[layer];
        if (bucket.empty()) return false;

        struct Cand {
            int id;
            Cycles latency;
        };
        std::vector<Cand> pool;
        for (int id : bucket) {
            const Gate& gate = circuit.gates[id];
            if (!gate_ready(id) || !qubits_free(gate)) continue;
            auto route = bfs_route(grid, grid.qubit_cell(gate.q1), grid.qubit_cell(gate.q2));
            if (!route) continue;  // grid congested here, retry later
            pool.push_back({id, merge_cost(route->full_path(), grid, config).total});
        }
        if (pool.empty()) return false;

        const Cand* seed = &pool[0];
        for (const Cand& c : pool)
            if (c.latency > seed->latency) seed = &c;
        const Gate& seed_gate = circuit.gates[seed->id];

        auto endpoint_max = [&](int q) {
            Cycles best{0};
            for (const Cand& c : pool)
                if (circuit.gates[c.id].touches(q)) best = Cycles::max(best, c.latency);
            return best;
        };
        int control = endpoint_max(seed_gate.q1) >= endpoint_max(seed_gate.q2) ? seed_gate.q1
                                                                               : seed_gate.q2;

        // Absorb by incremental Steiner feasibility on the live grid; a gate
        // that extends the footprint out of reach stays for a later group.
        std::vector<GroupMember> members;
        std::set<int> targets;
        std::vector<Coord> terminals;
        members.push_back({seed->id, control, seed_gate.other(control), seed_gate.angle});
        targets.insert(seed_gate.other(control));
        terminals.push_back(grid.qubit_cell(seed_gate.other(control)));
        auto fp = steiner_tree(grid, grid.qubit_cell(control), terminals);
        if (!fp)
            throw std::logic_error("execute_pipeline: seed route vanished during formation");
        for (const Cand& c : pool) {
            if (c.id == seed->id) continue;
            const Gate& gate = circuit.gates[c.id];
            if (!gate.touches(control)) continue;
            int tgt = gate.other(control);
            if (targets.count(tgt)) continue;
            std::vector<Coord> trial = terminals;
            trial.push_back(grid.qubit_cell(tgt));
            auto wider = steiner_tree(grid, grid.qubit_cell(control), trial);
            if (!wider) continue;
            members.push_back({c.id, control, tgt, gate.angle});
            targets.insert(tgt);
            terminals = std::move(trial);
            fp = std::move(wider);
        }

        LiveGroup g;
        g.id = (int)groups.size();
        g.layer = layer;
        g.control = control;
        g.members = std::move(members);
        g.fp = std::move(*fp);
        must_reserve(g.fp.tree_cells, g.id);
        lock[g.control] = g.id;
        for (const GroupMember& m : g.members) lock[m.target] = g.id;

        Cycles span = emit_sweep(g, Stage::A, t);
        Completion c;
        c.kind = Completion::Kind::GROUP_A;
        c.group = g.id;
        c.release = g.fp.tree_cells;
        c.commits = g.fp.root_to_terminal_paths;
        schedule_at(t + span, std::move(c));

        for (const GroupMember& m : g.members)
            g.jobs.push_back(make_rz_job(m.gate_id, m.target, -m.angle / 2, ctx));
        if (ctx.regime == Regime::FFT_MSC)
            for (const GroupMember& m : g.members) {
                auto site = choose_injection_site(grid.qubit_cell(m.target), grid, {});
                if (!site) continue;  // claim falls back to stage-B dispatch
                must_reserve({*site}, g.id);
                g.msc_site[m.target] = *site;
                g.msc_ready[m.target] = t + config.t_cult;
            }

        std::set<int> taken;
        for (const GroupMember& m : g.members) taken.insert(m.gate_id);
        std::vector<int> keep;
        for (int id : bucket)
            if (!taken.count(id)) keep.push_back(id);
        bucket = std::move(keep);

        groups.push_back(std::move(g));
        ++out.groups_formed;
        return true;
    }

    bool dispatch_single_rz(const Cycles& t) {
        bool progress = false;
        std::vector<int> keep;
        for (int id : pending_rz) {
            const Gate& gate = circuit.gates[id];
            if (!gate_ready(id) || !qubits_free(gate)) {
                keep.push_back(id);
                continue;
            }
            RzJob job = make_rz_job(id, gate.q1, gate.angle, ctx);
            if (job_instant(job)) {
                emit_instant(job, -1, t);
                done[id] = true;
                --gates_left;
                progress = true;
                continue;
            }
            Completion base;
            base.kind = Completion::Kind::SINGLE;
            base.unlock = {gate.q1};
            base.done_gates = {id};
            lock[gate.q1] = 1000000 + id;
            if (try_rz_dispatch(job, -1, t, std::move(base))) {
                progress = true;
            } else {
                lock[gate.q1] = -1;
                keep.push_back(id);
            }
        }
        pending_rz = std::move(keep);
        return progress;
    }

    /// Closing sweeps first, then rotations, then new formations: freeing a
    /// group's qubits beats widening the frontier at the same instant.
    void dispatch_all(const Cycles& t) {
        bool again = true;
        while (again) {
            again = false;
            again |= dispatch_inplace_h(t);
            again |= dispatch_stage_c(t);
            again |= dispatch_stage_b(t);
            again |= dispatch_stage_a(t);
            again |= dispatch_single_rz(t);
        }
    }

    std::string stuck_dump(const Cycles& t) const {
        std::string msg = "execute_pipeline: no dispatchable work at t=" + t.str() + " with " +
                          std::to_string(gates_left) + " gate(s) pending:";
        for (std::size_t id = 0; id < done.size(); ++id)
            if (!done[id]) {
                msg += " g" + std::to_string(id);
                if (msg.size() > 400) {
                    msg += " ...";
                    break;
                }
            }
        return msg;
    }

    PipelineSchedule run() {
        Cycles t{0};
        while (true) {
            dispatch_all(t);
            if (events.empty()) break;
            t = events.begin()->first.first;
            while (!events.empty() && events.begin()->first.first == t) {
                Completion c = std::move(events.begin()->second);
                events.erase(events.begin());
                retire(c);
            }
        }
        if (gates_left > 0) throw std::runtime_error(stuck_dump(t));
        Cycles makespan{0};
        for (const Interval& iv : out.events.intervals)
            makespan = Cycles::max(makespan, iv.end);
        out.events.makespan = makespan;
        return std::move(out);
    }
};

} // namespace

PipelineSchedule execute_pipeline(const LogicalCircuit& circuit, const LayoutGrid& grid0,
                                  const CostConfig& config, const RotationContext& ctx) {
    Pipeline p(circuit, grid0, config, ctx);
    return p.run();
}

} // namespace lscomp
