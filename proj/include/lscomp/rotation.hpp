// rotation.hpp
//
// Stage-B realization under the three fault-tolerance regimes:
//   EFT_INJECT - continuous-angle rotated-state injection beside the target,
//   FFT_MSD    - synthesized {H,S,T} sequences consuming distilled magic
//                states over routed corridors, batched by route disjointness,
//   FFT_MSC    - in-situ magic-state cultivation on a claimed adjacent site,
//                consumptions serialized by the cultivation interval.

#ifndef LSCOMP_ROTATION_HPP
#define LSCOMP_ROTATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "lscomp/circuit.hpp"
#include "lscomp/cost_model.hpp"
#include "lscomp/cycles.hpp"
#include "lscomp/layout.hpp"
#include "lscomp/routing.hpp"
#include "lscomp/schedule.hpp"

namespace lscomp {

enum class Regime : std::uint8_t { EFT_INJECT, FFT_MSD, FFT_MSC };

const char* to_string(Regime r);
std::optional<Regime> regime_from_string(const std::string& s);  // eft|fft-msd|fft-msc

/// Everything a rotation needs besides the grid: the regime, the synthesis
/// precision (epsilon ~ -log10 of target error), and the sequence provider.
struct RotationContext {
    Regime regime = Regime::EFT_INJECT;
    int epsilon = 6;
    RzProvider provider = RzProvider::MODEL;
    const RzTable* table = nullptr;
};

/// One pending Rz(angle) on a logical target patch.  FFT regimes carry the
/// synthesized sequence; EFT consumes the angle directly.
struct RzJob {
    int gate_id = -1;
    int target = -1;
    double angle = 0.0;
    RzDecomposition decomposition;  // empty under EFT_INJECT
};

RzJob make_rz_job(int gate_id, int target, double angle, const RotationContext& ctx);

/// Top-k magic-state patch selection: rank every MS patch by Manhattan
/// distance to the target (ties lexicographic), route the nearest k, pick
/// the cheapest merge cost (ties keep candidate order).  k=1 degenerates to
/// the nearest-patch baseline.  Throws std::runtime_error when the grid has
/// no MS patches; returns nullopt when none of the candidates routes through
/// cells outside `blocked`.
struct MsSelection {
    Coord target;
    std::vector<Coord> candidates;
    Coord chosen;
    Cycles chosen_cost;
    Route route;
    int k = 0;
};
std::optional<MsSelection> select_ms_patch(const Coord& target, const LayoutGrid& grid,
                                           const CostConfig& config, int k,
                                           const std::vector<Coord>& blocked = {});

/// Lexicographically smallest free ancilla 4-adjacent to `target` and not in
/// `claimed`; nullopt when every neighbor is taken.
std::optional<Coord> choose_injection_site(const Coord& target, const LayoutGrid& grid,
                                           const std::vector<Coord>& claimed);

/// tau(job): route cost per T plus the in-place S/H tail; no route term when
/// the sequence has no T.
Cycles msd_tau(const RzJob& job, const Cycles& tau_route, const CostConfig& config);

/// Consumption of one cultivated T: a direct merge between the site and the
/// target patch.
Cycles msc_consume_cost(const Coord& site, const Coord& target, const LayoutGrid& grid,
                        const CostConfig& config);

/// Timeline of one job on a claimed cultivation site.  S/H steps advance the
/// cursor in place; each T stalls until the site's current cultivation
/// completes, consumes, and restarts cultivation.  `cult_ready` is when the
/// site's first T becomes available.
struct MscTimeline {
    std::vector<std::pair<Cycles, Cycles>> consumes;      // per-T site windows
    std::vector<std::pair<Cycles, Cycles>> cultivations;  // background growth windows
    Cycles end;
};
MscTimeline msc_walk(const RzDecomposition& seq, const Cycles& start, const Cycles& cult_ready,
                     const Cycles& consume_cost, const CostConfig& config);

/// One realized stage B: the span from its start time plus the emitted
/// reservation intervals (absolute times).
struct StageBResult {
    Cycles span;
    std::vector<Interval> intervals;
};

/// EFT: waves of simultaneous injections, each target on its own adjacent
/// ancilla; contended targets roll to the next wave (no reset between
/// waves).  Zero-angle jobs are instant.
StageBResult realize_eft(const std::vector<RzJob>& jobs, const LayoutGrid& grid,
                         const CostConfig& config, const Cycles& t0, int group);

/// FFT-MSD: per job select_ms_patch under the batch's claimed cells, greedy
/// disjoint batches, span = sum of batch maxima + reset between batches.
/// Commits route orientations batch by batch.
StageBResult realize_msd_group(const std::vector<RzJob>& jobs, LayoutGrid& grid,
                               const CostConfig& config, const Cycles& t0, int group);

/// FFT-MSC: claim a site per target (waves on contention); cultivation for a
/// wave's sites starts at the wave start, so the first consumption waits the
/// full cultivation time.
StageBResult realize_msc_group(const std::vector<RzJob>& jobs, const LayoutGrid& grid,
                               const CostConfig& config, const Cycles& t0, int group);

/// Regime dispatch used by the slice executor.
StageBResult realize_stage_b(const std::vector<RzJob>& jobs, LayoutGrid& grid,
                             const CostConfig& config, const RotationContext& ctx,
                             const Cycles& t0, int group);

} // namespace lscomp

#endif
