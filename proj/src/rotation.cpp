#include "lscomp/rotation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lscomp {

const char* to_string(Regime r) {
    switch (r) {
        case Regime::EFT_INJECT: return "eft";
        case Regime::FFT_MSD: return "fft-msd";
        case Regime::FFT_MSC: return "fft-msc";
    }
    return "?";
}

std::optional<Regime> regime_from_string(const std::string& s) {
    if (s == "eft") return Regime::EFT_INJECT;
    if (s == "fft-msd") return Regime::FFT_MSD;
    if (s == "fft-msc") return Regime::FFT_MSC;
    return std::nullopt;
}

RzJob make_rz_job(int gate_id, int target, double angle, const RotationContext& ctx) {
    RzJob job;
    job.gate_id = gate_id;
    job.target = target;
    job.angle = angle;
    if (ctx.regime != Regime::EFT_INJECT)
        job.decomposition = synthesize_rz(angle, ctx.epsilon, ctx.provider, ctx.table);
    return job;
}

std::optional<MsSelection> select_ms_patch(const Coord& target, const LayoutGrid& grid,
                                           const CostConfig& config, int k,
                                           const std::vector<Coord>& blocked) {
    const std::vector<Coord>& patches = grid.magic_state_cells();
    if (patches.empty())
        throw std::runtime_error("select_ms_patch: layout offers no magic-state patches");
    if (k < 1) throw std::invalid_argument("select_ms_patch: k must be positive");

    // Cheap pre-filter: k nearest by Manhattan distance, ties lexicographic
    // (magic_state_cells is already lexicographically sorted).
    std::vector<Coord> ranked = patches;
    std::stable_sort(ranked.begin(), ranked.end(), [&](const Coord& a, const Coord& b) {
        int da = std::abs(a.row - target.row) + std::abs(a.col - target.col);
        int db = std::abs(b.row - target.row) + std::abs(b.col - target.col);
        return da < db;
    });
    if ((int)ranked.size() > k) ranked.resize(k);

    MsSelection sel;
    sel.target = target;
    sel.candidates = ranked;
    sel.k = k;
    bool found = false;
    std::set<Coord> barred(blocked.begin(), blocked.end());
    for (const Coord& ms : ranked) {
        if (barred.count(ms) || grid.at(ms).occupant >= 0) continue;  // patch mid-route
        auto route = bfs_route(grid, target, ms, blocked);
        if (!route) continue;
        Cycles cost = merge_cost(route->full_path(), grid, config).total;
        if (!found || cost < sel.chosen_cost) {
            found = true;
            sel.chosen = ms;
            sel.chosen_cost = cost;
            sel.route = *route;
        }
    }
    if (!found) return std::nullopt;
    return sel;
}

std::optional<Coord> choose_injection_site(const Coord& target, const LayoutGrid& grid,
                                           const std::vector<Coord>& claimed) {
    std::set<Coord> barred(claimed.begin(), claimed.end());
    for (const Coord& n : grid.neighbors(target))  // N,W,E,S == lexicographic
        if (grid.routable(n) && !barred.count(n)) return n;
    return std::nullopt;
}

Cycles msd_tau(const RzJob& job, const Cycles& tau_route, const CostConfig& config) {
    const RzDecomposition& d = job.decomposition;
    return rz_sequence_cost(d.n_t, d.n_s, d.n_h, d.n_t > 0 ? tau_route : Cycles{0}, config);
}

Cycles msc_consume_cost(const Coord& site, const Coord& target, const LayoutGrid& grid,
                        const CostConfig& config) {
    return merge_cost({site, target}, grid, config).total;
}

MscTimeline msc_walk(const RzDecomposition& seq, const Cycles& start, const Cycles& cult_ready,
                     const Cycles& consume_cost, const CostConfig& config) {
    MscTimeline tl;
    Cycles cursor = start;
    Cycles ready = cult_ready;
    Cycles grow_begin = ready - config.t_cult;  // current cultivation window start
    int remaining_t = seq.n_t;
    for (char step : seq.sequence) {
        if (step == 'S') {
            cursor = cursor + config.t_s;
        } else if (step == 'H') {
            cursor = cursor + config.t_h;
        } else {  // 'T'
            Cycles begin = Cycles::max(cursor, ready);
            tl.cultivations.push_back({grow_begin, ready});
            tl.consumes.push_back({begin, begin + consume_cost});
            cursor = begin + consume_cost;
            --remaining_t;
            if (remaining_t > 0) {  // site re-grows only while more Ts need it
                grow_begin = cursor;
                ready = cursor + config.t_cult;
            }
        }
    }
    tl.end = cursor;
    return tl;
}

namespace {

Interval base_interval(const RzJob& job, int group, const Cycles& start, const Cycles& end) {
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

bool instant(const RzJob& job, Regime regime) {
    if (regime == Regime::EFT_INJECT) return job.angle == 0.0;
    return job.decomposition.sequence.empty();
}

/// Zero-duration marker keeping the gate visible in the trace.
Interval instant_interval(const RzJob& job, int group, const Cycles& t0, const LayoutGrid& grid) {
    Interval iv = base_interval(job, group, t0, t0);
    iv.kind = OpKind::INPLACE;
    iv.cells = {grid.qubit_cell(job.target)};
    return iv;
}

} // namespace

StageBResult realize_eft(const std::vector<RzJob>& jobs, const LayoutGrid& grid,
                         const CostConfig& config, const Cycles& t0, int group) {
    StageBResult out;
    out.span = Cycles{0};
    std::vector<const RzJob*> pending;
    for (const RzJob& job : jobs) {
        if (instant(job, Regime::EFT_INJECT))
            out.intervals.push_back(instant_interval(job, group, t0, grid));
        else
            pending.push_back(&job);
    }
    Cycles wave_start = t0;
    while (!pending.empty()) {
        std::vector<Coord> claimed;
        std::vector<const RzJob*> deferred;
        bool placed = false;
        for (const RzJob* job : pending) {
            Coord target = grid.qubit_cell(job->target);
            auto site = choose_injection_site(target, grid, claimed);
            if (!site) {
                deferred.push_back(job);
                continue;
            }
            placed = true;
            claimed.push_back(*site);
            Interval iv = base_interval(*job, group, wave_start, wave_start + config.t_rz_inject);
            iv.kind = OpKind::INJECT;
            iv.cells = {*site, target};
            out.intervals.push_back(iv);
        }
        if (!placed)
            throw std::runtime_error("realize_eft: target has no adjacent ancilla at all");
        wave_start = wave_start + config.t_rz_inject;
        out.span = wave_start - t0;
        pending = std::move(deferred);
    }
    return out;
}

StageBResult realize_msd_group(const std::vector<RzJob>& jobs, LayoutGrid& grid,
                               const CostConfig& config, const Cycles& t0, int group) {
    StageBResult out;
    // Admission commits the route's orientations right away: batch-mates are
    // cell-disjoint (unaffected), while later batches price their routes on
    // the updated map.
    auto chooser = [&](int j, const std::vector<Coord>& batch_blocked) -> std::optional<BatchEntry> {
        const RzJob& job = jobs[j];
        Coord target = grid.qubit_cell(job.target);
        if (job.decomposition.n_t == 0) {
            Route none;
            none.src = none.dst = target;
            return BatchEntry{j, none, msd_tau(job, Cycles{0}, config)};
        }
        auto sel = select_ms_patch(target, grid, config, config.ms_top_k, batch_blocked);
        if (!sel) return std::nullopt;
        commit_path_orientation(grid, sel->route.full_path());
        return BatchEntry{j, sel->route, msd_tau(job, sel->chosen_cost, config)};
    };

    auto batches = form_batches((int)jobs.size(), chooser);
    Cycles cursor = t0;
    for (std::size_t b = 0; b < batches.size(); ++b) {
        if (b > 0) cursor = cursor + config.c_reset;  // reset between batches
        Cycles longest{0};
        for (const BatchEntry& entry : batches[b]) {
            const RzJob& job = jobs[entry.job];
            Interval iv = base_interval(job, group, cursor, cursor + entry.duration);
            if (entry.route.src == entry.route.dst) {
                iv.kind = OpKind::INPLACE;  // pure S/H tail, no route needed
                iv.cells = {grid.qubit_cell(job.target)};
            } else {
                iv.kind = OpKind::T_ROUTE;
                iv.cells = entry.route.full_path();
            }
            out.intervals.push_back(iv);
            longest = Cycles::max(longest, entry.duration);
        }
        cursor = cursor + longest;
    }
    out.span = cursor - t0;
    return out;
}

StageBResult realize_msc_group(const std::vector<RzJob>& jobs, const LayoutGrid& grid,
                               const CostConfig& config, const Cycles& t0, int group) {
    StageBResult out;
    out.span = Cycles{0};
    std::vector<const RzJob*> pending;
    for (const RzJob& job : jobs) {
        if (instant(job, Regime::FFT_MSC))
            out.intervals.push_back(instant_interval(job, group, t0, grid));
        else
            pending.push_back(&job);
    }
    Cycles wave_start = t0;
    while (!pending.empty()) {
        std::vector<Coord> claimed;
        std::vector<const RzJob*> deferred;
        Cycles wave_end = wave_start;
        bool placed = false;
        for (const RzJob* job : pending) {
            Coord target = grid.qubit_cell(job->target);
            auto site = choose_injection_site(target, grid, claimed);
            if (!site) {
                deferred.push_back(job);
                continue;
            }
            placed = true;
            claimed.push_back(*site);
            Cycles consume = msc_consume_cost(*site, target, grid, config);
            MscTimeline tl = msc_walk(job->decomposition, wave_start,
                                      wave_start + config.t_cult, consume, config);
            Interval iv = base_interval(*job, group, wave_start, tl.end);
            iv.kind = OpKind::MSC_CONSUME;
            iv.cells = {target};
            out.intervals.push_back(iv);
            for (std::size_t i = 0; i < tl.consumes.size(); ++i) {
                Interval site_iv;
                site_iv.start = tl.consumes[i].first;
                site_iv.end = tl.consumes[i].second;
                site_iv.op_id = "rz" + std::to_string(job->gate_id) + ".t" + std::to_string(i);
                site_iv.group = group;
                site_iv.stage = Stage::B;
                site_iv.kind = OpKind::MSC_CONSUME;
                site_iv.cells = {*site};
                site_iv.gate_ids = {job->gate_id};
                out.intervals.push_back(site_iv);
            }
            for (std::size_t i = 0; i < tl.cultivations.size(); ++i) {
                Interval cult;
                cult.start = tl.cultivations[i].first;
                cult.end = tl.cultivations[i].second;
                cult.op_id = "cult" + std::to_string(job->gate_id) + "." + std::to_string(i);
                cult.group = group;
                cult.stage = Stage::NONE;
                cult.kind = OpKind::MSC_CULTIVATE;
                cult.cells = {*site};
                out.intervals.push_back(cult);
            }
            wave_end = Cycles::max(wave_end, tl.end);
        }
        if (!placed)
            throw std::runtime_error("realize_msc_group: target has no adjacent ancilla at all");
        wave_start = wave_end;
        out.span = wave_end - t0;
        pending = std::move(deferred);
    }
    return out;
}

StageBResult realize_stage_b(const std::vector<RzJob>& jobs, LayoutGrid& grid,
                             const CostConfig& config, const RotationContext& ctx,
                             const Cycles& t0, int group) {
    switch (ctx.regime) {
        case Regime::EFT_INJECT: return realize_eft(jobs, grid, config, t0, group);
        case Regime::FFT_MSD: return realize_msd_group(jobs, grid, config, t0, group);
        case Regime::FFT_MSC: return realize_msc_group(jobs, grid, config, t0, group);
    }
    throw std::logic_error("realize_stage_b: unknown regime");
}

} // namespace lscomp
