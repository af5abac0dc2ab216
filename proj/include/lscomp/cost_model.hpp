// cost_model.hpp
//
// Clock-cycle cost model for lattice-surgery primitives.  A CNOT merge is
// ZZ(1) + optional simultaneous patch rotation(1) + ZZ(1) + XX(1), so a
// point-to-point CNOT costs 4 cycles on a misaligned path and 3 once the
// cells along it are already oriented.  Rotation sequences and batch
// latencies follow the same additive accounting.

#ifndef LSCOMP_COST_MODEL_HPP
#define LSCOMP_COST_MODEL_HPP

#include <string>
#include <vector>

#include "lscomp/cycles.hpp"
#include "lscomp/layout.hpp"

namespace lscomp {

enum class RotationMode : std::uint8_t {
    SIMULTANEOUS,  // all misaligned path cells rotate together: 0 or 1 cycle
    PER_SEGMENT    // one rotation cycle per misaligned cell (baseline text)
};

struct CostConfig {
    Cycles t_zz{1};              // joint ZZ measurement
    Cycles t_rot_patch{1};       // patch rotation stage
    Cycles t_xx{1};              // joint XX measurement
    Cycles t_h{1};               // in-place H
    Cycles t_s{3, 2};            // in-place S = 1.5
    Cycles t_rz_inject{42, 5};   // EFT rotated-state injection = 8.4
    Cycles t_cult{19, 10};       // background cultivation per T = 1.9
    Cycles c_reset{1};           // grid-wide reset between batches/slices
    Cycles c_flow_per_turn{0};   // optional per-turn routing penalty
    RotationMode rotation_mode = RotationMode::SIMULTANEOUS;
    int ms_top_k = 4;            // candidate magic-state patches evaluated

    void validate() const;  // throws std::invalid_argument on negative cost
};

struct PathCost {
    Cycles total;
    Cycles zz1, rotation, zz2, xx;  // stage breakdown; total also adds turns
    Cycles turn_penalty;
    int turns = 0;
    int misaligned_cells = 0;
};

/// Orientation a path cell must present, given the travel directions through
/// it.  Straight horizontal travel needs Z boundaries east/west
/// (Z_HORIZONTAL); vertical travel needs X_HORIZONTAL.  At a turn the
/// outgoing segment decides.
Orientation required_orientation(const Coord& prev, const Coord& here, const Coord& next);

/// Per-cell required orientations for the interior (ancilla) cells of a
/// path given as [endpoint, a1, ..., am, endpoint].
std::vector<Orientation> imposed_orientations(const std::vector<Coord>& path);

/// Cost of one merge along `path` = [src patch, ancilla..., dst patch].
/// Interior cells must be ANCILLA (never WALL/DATA/MAGIC_STATE) and
/// 4-connected; consecutive coords must be adjacent.  Throws
/// std::invalid_argument otherwise.
PathCost merge_cost(const std::vector<Coord>& path, const LayoutGrid& grid,
                    const CostConfig& config);

/// Commit the orientations a completed merge imposes (last writer wins).
void commit_path_orientation(LayoutGrid& grid, const std::vector<Coord>& path);

/// tau(t_j) = tau_route * n_t + t_s * n_s + t_h * n_h for one synthesized
/// rotation job whose magic-state route costs tau_route per T.
Cycles rz_sequence_cost(int n_t, int n_s, int n_h, const Cycles& tau_route,
                        const CostConfig& config);

/// Total latency of sequential route batches: sum of per-batch maxima plus
/// one grid reset between consecutive batches.
Cycles batch_latency(const std::vector<Cycles>& batch_maxima, const CostConfig& config);

} // namespace lscomp

#endif
