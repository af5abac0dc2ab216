#include "lscomp/greedy.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "lscomp/routing.hpp"

namespace lscomp {

namespace {

enum class PrimKind : std::uint8_t { CNOT_OPEN, RZ, CNOT_CLOSE, H };

/// One schedulable primitive of a decomposed gate.
struct Prim {
    int id = -1;
    int gate = -1;
    PrimKind kind = PrimKind::H;
    int pred = -1;    // intra-gate predecessor primitive
    double angle = 0.0;  // RZ angle (CP midpoint or bare rotation)
    bool done = false;
};

/// A realization ready to commit: its trace intervals, the overlay cells it
/// claims for the round, and the paths whose orientations flip at round end.
struct Placement {
    std::vector<Interval> intervals;
    std::vector<Coord> claims;
    std::vector<std::vector<Coord>> commits;
    Cycles duration;
};

struct Greedy {
    const CostConfig& config;
    const RotationContext& ctx;
    LogicalCircuit circuit;
    LayoutGrid grid;

    std::vector<Prim> prims;
    std::vector<std::vector<int>> gate_prims;  // gate -> primitive ids
    std::vector<std::vector<int>> on_qubit;    // qubit -> gate ids, program order
    std::vector<int> kappa;                    // downstream chain length per prim

    GreedySchedule out;

    Greedy(const LogicalCircuit& c, const LayoutGrid& g0, const CostConfig& cfg,
           const RotationContext& rc)
        : config(cfg), ctx(rc), circuit(c), grid(g0) {
        circuit.validate();
        if (circuit.commuting_layers.empty()) assign_commuting_layers(circuit);
        gate_prims.resize(circuit.gates.size());
        on_qubit.resize(circuit.num_qubits);
        for (const Gate& g : circuit.gates) {
            on_qubit[g.q1].push_back(g.id);
            if (g.q2 >= 0) on_qubit[g.q2].push_back(g.id);
            if (g.kind == GateKind::CPHASE) {
                CphaseDecomposition d = decompose_cphase(g);
                int cx1 = add_prim(g.id, PrimKind::CNOT_OPEN, -1, 0.0);
                int rz = add_prim(g.id, PrimKind::RZ, cx1, d.rz_angle);
                add_prim(g.id, PrimKind::CNOT_CLOSE, rz, 0.0);
            } else if (g.kind == GateKind::H) {
                add_prim(g.id, PrimKind::H, -1, 0.0);
            } else {
                add_prim(g.id, PrimKind::RZ, -1, g.angle);
            }
        }
        compute_kappa();
    }

    int add_prim(int gate, PrimKind kind, int pred, double angle) {
        Prim p;
        p.id = (int)prims.size();
        p.gate = gate;
        p.kind = kind;
        p.pred = pred;
        p.angle = angle;
        prims.push_back(p);
        gate_prims[gate].push_back(p.id);
        return p.id;
    }

    /// Longest dependent-primitive chain hanging off each primitive
    /// (including itself).  Downstream chains never shrink as the schedule
    /// advances, so one upfront pass suffices.
    void compute_kappa() {
        std::vector<std::vector<int>> succ(prims.size());
        for (const Prim& p : prims)
            if (p.pred >= 0) succ[p.pred].push_back(p.id);
        for (const auto& chain : on_qubit)
            for (std::size_t i = 0; i < chain.size(); ++i)
                for (std::size_t j = i + 1; j < chain.size(); ++j)
                    if (circuit.layer_of[chain[i]] < circuit.layer_of[chain[j]])
                        succ[gate_prims[chain[i]].back()].push_back(gate_prims[chain[j]].front());
        kappa.assign(prims.size(), 0);
        std::vector<int> order(prims.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
        // Memoized longest path over the layer-monotone DAG.
        std::vector<char> state(prims.size(), 0);
        std::vector<int> stack;
        for (int root : order) {
            if (state[root]) continue;
            stack.push_back(root);
            while (!stack.empty()) {
                int v = stack.back();
                if (state[v] == 0) {
                    state[v] = 1;
                    for (int s : succ[v])
                        if (!state[s]) stack.push_back(s);
                } else {
                    stack.pop_back();
                    if (state[v] == 2) continue;
                    state[v] = 2;
                    int best = 0;
                    for (int s : succ[v]) best = std::max(best, kappa[s]);
                    kappa[v] = 1 + best;
                }
            }
        }
    }

    bool prim_instant(const Prim& p) const {
        if (p.kind != PrimKind::RZ) return false;
        if (ctx.regime == Regime::EFT_INJECT) return p.angle == 0.0;
        return synthesize_rz(p.angle, ctx.epsilon, ctx.provider, ctx.table).sequence.empty();
    }

    std::vector<Coord> free_sites(const Coord& target, const std::vector<Coord>& claimed) const {
        std::set<Coord> barred(claimed.begin(), claimed.end());
        std::vector<Coord> sites;
        for (const Coord& n : grid.neighbors(target))
            if (grid.routable(n) && !barred.count(n)) sites.push_back(n);
        return sites;
    }

    /// Ancilla endpoint pairs beside the two patches, cheapest-contact first:
    /// increasing Manhattan distance between the pair, ties lexicographic.
    std::vector<std::pair<Coord, Coord>> endpoint_pairs(const Coord& c, const Coord& t,
                                                        const std::vector<Coord>& claimed) const {
        std::vector<std::pair<Coord, Coord>> pairs;
        for (const Coord& a1 : free_sites(c, claimed))
            for (const Coord& a2 : free_sites(t, claimed)) pairs.push_back({a1, a2});
        std::stable_sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
            int dx = std::abs(x.first.row - x.second.row) + std::abs(x.first.col - x.second.col);
            int dy = std::abs(y.first.row - y.second.row) + std::abs(y.first.col - y.second.col);
            if (dx != dy) return dx < dy;
            return x < y;
        });
        return pairs;
    }

    /// Merge path [control, a1 .. a2, target] for one endpoint pair, routed
    /// around the round's claims; nullopt when the pair does not connect.
    std::optional<std::vector<Coord>> pair_path(const Coord& c, const Coord& t, const Coord& a1,
                                                const Coord& a2,
                                                const std::vector<Coord>& claimed) const {
        std::vector<Coord> path;
        path.push_back(c);
        if (a1 == a2) {
            path.push_back(a1);
        } else if (std::abs(a1.row - a2.row) + std::abs(a1.col - a2.col) == 1) {
            path.push_back(a1);
            path.push_back(a2);
        } else {
            // The endpoints are themselves routable ancillas; bar them so the
            // mediating segment cannot double back through either one.
            std::vector<Coord> barred = claimed;
            barred.push_back(a1);
            barred.push_back(a2);
            auto route = bfs_route(grid, a1, a2, barred);
            if (!route) return std::nullopt;
            for (const Coord& cell : route->full_path()) path.push_back(cell);
        }
        path.push_back(t);
        return path;
    }

    /// Most-constrained-first census on the round's empty overlay: how many
    /// realizations exist and how long the best one runs.
    bool census(const Prim& p, int& n_options, Cycles& duration) const {
        const Gate& g = circuit.gates[p.gate];
        if (p.kind == PrimKind::H) {
            n_options = 1;
            duration = config.t_h;
            return true;
        }
        if (p.kind == PrimKind::CNOT_OPEN || p.kind == PrimKind::CNOT_CLOSE) {
            Coord c = grid.qubit_cell(g.q1), t = grid.qubit_cell(g.q2);
            n_options = 0;
            bool first = true;
            for (const auto& [a1, a2] : endpoint_pairs(c, t, {})) {
                auto path = pair_path(c, t, a1, a2, {});
                if (!path) continue;
                Cycles cost = merge_cost(*path, grid, config).total;
                if (first || cost < duration) duration = cost;
                first = false;
                ++n_options;
            }
            return n_options > 0;
        }
        // RZ primitive.
        if (prim_instant(p)) {
            n_options = 1;
            duration = Cycles{0};
            return true;
        }
        int tq = g.kind == GateKind::CPHASE ? g.q2 : g.q1;  // rotation rides the CNOT target
        Coord target = grid.qubit_cell(tq);
        RzJob job = make_rz_job(p.gate, tq, p.angle, ctx);
        switch (ctx.regime) {
            case Regime::EFT_INJECT: {
                n_options = (int)free_sites(target, {}).size();
                duration = config.t_rz_inject;
                return n_options > 0;
            }
            case Regime::FFT_MSD: {
                if (job.decomposition.n_t == 0) {
                    n_options = 1;
                    duration = msd_tau(job, Cycles{0}, config);
                    return true;
                }
                auto sel = select_ms_patch(target, grid, config, config.ms_top_k, {});
                if (!sel) {
                    n_options = 0;
                    return false;
                }
                n_options = 0;
                for (const Coord& ms : sel->candidates)
                    if (grid.at(ms).occupant < 0 && bfs_route(grid, target, ms)) ++n_options;
                duration = msd_tau(job, sel->chosen_cost, config);
                return true;
            }
            case Regime::FFT_MSC: {
                std::vector<Coord> sites = free_sites(target, {});
                n_options = (int)sites.size();
                if (n_options == 0) return false;
                Cycles consume = msc_consume_cost(sites.front(), target, grid, config);
                MscTimeline tl =
                    msc_walk(job.decomposition, Cycles{0}, config.t_cult, consume, config);
                duration = tl.end;
                return true;
            }
        }
        return false;
    }

    Interval rz_interval(const Prim& p, int target, const Cycles& start, const Cycles& end) const {
        Interval iv;
        iv.start = start;
        iv.end = end;
        iv.op_id = "rz" + std::to_string(p.gate);
        iv.group = p.gate;
        iv.stage = Stage::B;
        iv.qubits = {target};
        iv.gate_ids = {p.gate};
        iv.ops = {{SemanticOp::Kind::RZ, target, -1, p.angle}};
        return iv;
    }

    std::optional<Placement> realize(const Prim& p, const Cycles& t,
                                     const std::vector<Coord>& claimed) {
        const Gate& g = circuit.gates[p.gate];
        Placement pl;
        if (p.kind == PrimKind::H) {
            Interval iv;
            iv.start = t;
            iv.end = t + config.t_h;
            iv.op_id = "g" + std::to_string(p.gate);
            iv.group = p.gate;
            iv.kind = OpKind::INPLACE;
            iv.cells = {grid.qubit_cell(g.q1)};
            iv.qubits = {g.q1};
            iv.gate_ids = {p.gate};
            iv.ops = {{SemanticOp::Kind::H, g.q1, -1, 0.0}};
            pl.intervals.push_back(std::move(iv));
            pl.duration = config.t_h;
            return pl;
        }
        if (p.kind == PrimKind::CNOT_OPEN || p.kind == PrimKind::CNOT_CLOSE) {
            Coord c = grid.qubit_cell(g.q1), tc = grid.qubit_cell(g.q2);
            for (const auto& [a1, a2] : endpoint_pairs(c, tc, claimed)) {
                auto path = pair_path(c, tc, a1, a2, claimed);
                if (!path) continue;
                Cycles cost = merge_cost(*path, grid, config).total;
                Interval iv;
                iv.start = t;
                iv.end = t + cost;
                iv.op_id = "g" + std::to_string(p.gate) +
                           (p.kind == PrimKind::CNOT_OPEN ? ".cx1" : ".cx2");
                iv.group = p.gate;
                iv.stage = p.kind == PrimKind::CNOT_OPEN ? Stage::A : Stage::C;
                iv.kind = OpKind::MERGE;
                iv.cells = *path;
                iv.qubits = {g.q1, g.q2};
                iv.gate_ids = {p.gate};
                iv.ops = {{SemanticOp::Kind::CNOT, g.q1, g.q2, 0.0}};
                if (p.kind == PrimKind::CNOT_CLOSE) {
                    double phase = g.angle / 2;
                    iv.ops.push_back({SemanticOp::Kind::RZ, g.q1, -1, phase});
                    iv.ops.push_back({SemanticOp::Kind::RZ, g.q2, -1, phase});
                }
                pl.intervals.push_back(std::move(iv));
                pl.claims.assign(path->begin() + 1, path->end() - 1);  // the ancilla span
                pl.commits = {*path};
                pl.duration = cost;
                return pl;
            }
            return std::nullopt;
        }
        // RZ primitive.
        int tq = g.kind == GateKind::CPHASE ? g.q2 : g.q1;  // rotation rides the CNOT target
        Coord target = grid.qubit_cell(tq);
        if (prim_instant(p)) {
            Interval iv = rz_interval(p, tq, t, t);
            iv.kind = OpKind::INPLACE;
            iv.cells = {target};
            pl.intervals.push_back(std::move(iv));
            pl.duration = Cycles{0};
            return pl;
        }
        RzJob job = make_rz_job(p.gate, tq, p.angle, ctx);
        switch (ctx.regime) {
            case Regime::EFT_INJECT: {
                auto site = choose_injection_site(target, grid, claimed);
                if (!site) return std::nullopt;
                Interval iv = rz_interval(p, tq, t, t + config.t_rz_inject);
                iv.kind = OpKind::INJECT;
                iv.cells = {*site, target};
                pl.intervals.push_back(std::move(iv));
                pl.claims = {*site};
                pl.duration = config.t_rz_inject;
                return pl;
            }
            case Regime::FFT_MSD: {
                if (job.decomposition.n_t == 0) {
                    Cycles tail = msd_tau(job, Cycles{0}, config);
                    Interval iv = rz_interval(p, tq, t, t + tail);
                    iv.kind = OpKind::INPLACE;
                    iv.cells = {target};
                    pl.intervals.push_back(std::move(iv));
                    pl.duration = tail;
                    return pl;
                }
                auto sel = select_ms_patch(target, grid, config, config.ms_top_k, claimed);
                if (!sel) return std::nullopt;
                Cycles tau = msd_tau(job, sel->chosen_cost, config);
                Interval iv = rz_interval(p, tq, t, t + tau);
                iv.kind = OpKind::T_ROUTE;
                iv.cells = sel->route.full_path();
                pl.intervals.push_back(std::move(iv));
                pl.claims = sel->route.cells;
                pl.claims.push_back(sel->route.dst);
                pl.commits = {sel->route.full_path()};
                pl.duration = tau;
                return pl;
            }
            case Regime::FFT_MSC: {
                auto site = choose_injection_site(target, grid, claimed);
                if (!site) return std::nullopt;
                Cycles consume = msc_consume_cost(*site, target, grid, config);
                MscTimeline tl = msc_walk(job.decomposition, t, t + config.t_cult, consume, config);
                Interval iv = rz_interval(p, tq, t, tl.end);
                iv.kind = OpKind::MSC_CONSUME;
                iv.cells = {target};
                pl.intervals.push_back(std::move(iv));
                for (std::size_t i = 0; i < tl.consumes.size(); ++i) {
                    Interval site_iv;
                    site_iv.start = tl.consumes[i].first;
                    site_iv.end = tl.consumes[i].second;
                    site_iv.op_id = "rz" + std::to_string(p.gate) + ".t" + std::to_string(i);
                    site_iv.group = p.gate;
                    site_iv.stage = Stage::B;
                    site_iv.kind = OpKind::MSC_CONSUME;
                    site_iv.cells = {*site};
                    site_iv.gate_ids = {p.gate};
                    pl.intervals.push_back(std::move(site_iv));
                }
                for (std::size_t i = 0; i < tl.cultivations.size(); ++i) {
                    Interval cult;
                    cult.start = tl.cultivations[i].first;
                    cult.end = tl.cultivations[i].second;
                    cult.op_id = "cult" + std::to_string(p.gate) + "." + std::to_string(i);
                    cult.group = p.gate;
                    cult.stage = Stage::NONE;
                    cult.kind = OpKind::MSC_CULTIVATE;
                    cult.cells = {*site};
                    pl.intervals.push_back(std::move(cult));
                }
                pl.claims = {*site};
                pl.duration = tl.end - t;
                return pl;
            }
        }
        return std::nullopt;
    }

    GreedySchedule run() {
        int remaining = (int)prims.size();
        Cycles t{0};
        while (remaining > 0) {
            if (!out.rounds.empty()) {
                Interval reset;
                reset.start = t;
                reset.end = t + config.c_reset;
                reset.op_id = "reset" + std::to_string(out.rounds.size() - 1);
                reset.kind = OpKind::RESET;
                out.events.intervals.push_back(std::move(reset));
                t = t + config.c_reset;
            }

            // Gates currently holding their qubits: opened, not yet closed.
            std::vector<int> holder(circuit.num_qubits, -1);
            for (std::size_t gid = 0; gid < gate_prims.size(); ++gid) {
                bool any = false, all = true;
                for (int pid : gate_prims[gid]) {
                    if (prims[pid].done) any = true;
                    else all = false;
                }
                if (any && !all) {
                    const Gate& g = circuit.gates[gid];
                    holder[g.q1] = (int)gid;
                    if (g.q2 >= 0) holder[g.q2] = (int)gid;
                }
            }

            struct Cand {
                int prim;
                int n_options;
                Cycles duration;
            };
            std::vector<Cand> cands;
            for (const Prim& p : prims) {
                if (p.done) continue;
                if (p.pred >= 0 && !prims[p.pred].done) continue;
                const Gate& g = circuit.gates[p.gate];
                bool blocked = false;
                for (int q : {g.q1, g.q2}) {
                    if (q < 0) continue;
                    if (holder[q] >= 0 && holder[q] != p.gate) blocked = true;
                    for (int f : on_qubit[q])
                        if (circuit.layer_of[f] < circuit.layer_of[p.gate])
                            for (int fp : gate_prims[f])
                                if (!prims[fp].done) blocked = true;
                }
                if (blocked) continue;
                Cand c{p.id, 0, Cycles{0}};
                if (!census(p, c.n_options, c.duration)) continue;  // defer
                cands.push_back(c);
            }
            std::stable_sort(cands.begin(), cands.end(), [&](const Cand& a, const Cand& b) {
                if (a.n_options != b.n_options) return a.n_options < b.n_options;
                if (a.duration != b.duration) return b.duration < a.duration;
                if (kappa[a.prim] != kappa[b.prim]) return kappa[a.prim] > kappa[b.prim];
                return prims[a.prim].gate != prims[b.prim].gate
                           ? prims[a.prim].gate < prims[b.prim].gate
                           : a.prim < b.prim;
            });

            GreedyRound round;
            round.index = (int)out.rounds.size();
            round.latency = Cycles{0};
            std::vector<Coord> claimed;
            std::vector<int> taken(circuit.num_qubits, -1);  // this round's qubit claims
            std::vector<std::vector<Coord>> commits;
            std::vector<int> placed;
            for (const Cand& c : cands) {
                const Prim& p = prims[c.prim];
                const Gate& g = circuit.gates[p.gate];
                bool clash = false;
                for (int q : {g.q1, g.q2})
                    if (q >= 0 && taken[q] >= 0 && taken[q] != p.gate) clash = true;
                if (clash) continue;
                auto pl = realize(p, t, claimed);
                if (!pl) continue;
                for (Interval& iv : pl->intervals) out.events.intervals.push_back(std::move(iv));
                for (const Coord& cell : pl->claims) claimed.push_back(cell);
                for (auto& path : pl->commits) commits.push_back(std::move(path));
                taken[g.q1] = p.gate;
                if (g.q2 >= 0) taken[g.q2] = p.gate;
                round.ops.push_back(p.kind == PrimKind::H ? "g" + std::to_string(p.gate)
                                    : p.kind == PrimKind::RZ
                                        ? "rz" + std::to_string(p.gate)
                                        : "g" + std::to_string(p.gate) +
                                              (p.kind == PrimKind::CNOT_OPEN ? ".cx1" : ".cx2"));
                round.latency = Cycles::max(round.latency, pl->duration);
                placed.push_back(p.id);
            }
            if (placed.empty())
                throw std::runtime_error(
                    "execute_greedy: round " + std::to_string(round.index) + " placed none of " +
                    std::to_string(remaining) + " pending primitive(s); layout cannot route them");
            for (int pid : placed) prims[pid].done = true;
            remaining -= (int)placed.size();
            for (const auto& path : commits) commit_path_orientation(grid, path);
            t = t + round.latency;
            out.rounds.push_back(std::move(round));
        }
        out.events.makespan = t;
        return std::move(out);
    }
};

} // namespace

GreedySchedule execute_greedy(const LogicalCircuit& circuit, const LayoutGrid& grid0,
                              const CostConfig& config, const RotationContext& ctx) {
    Greedy g(circuit, grid0, config, ctx);
    return g.run();
}

} // namespace lscomp
