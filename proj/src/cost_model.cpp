#include "lscomp/cost_model.hpp"

#include <stdexcept>

namespace lscomp {

void CostConfig::validate() const {
    const Cycles zero{0};
    auto check = [&](const Cycles& v, const char* name) {
        if (v < zero)
            throw std::invalid_argument(std::string("CostConfig: negative ") + name);
    };
    check(t_zz, "t_zz");
    check(t_rot_patch, "t_rot_patch");
    check(t_xx, "t_xx");
    check(t_h, "t_h");
    check(t_s, "t_s");
    check(t_rz_inject, "t_rz_inject");
    check(t_cult, "t_cult");
    check(c_reset, "c_reset");
    check(c_flow_per_turn, "c_flow_per_turn");
    if (ms_top_k < 1) throw std::invalid_argument("CostConfig: ms_top_k must be >= 1");
}

Orientation required_orientation(const Coord& prev, const Coord& here, const Coord& next) {
    bool out_horizontal = next.row == here.row;
    bool in_horizontal = here.row == prev.row;
    if (in_horizontal == out_horizontal)
        return out_horizontal ? Orientation::Z_HORIZONTAL : Orientation::X_HORIZONTAL;
    // Turn cell: the outgoing segment decides.
    return out_horizontal ? Orientation::Z_HORIZONTAL : Orientation::X_HORIZONTAL;
}

std::vector<Orientation> imposed_orientations(const std::vector<Coord>& path) {
    std::vector<Orientation> out;
    for (std::size_t i = 1; i + 1 < path.size(); ++i)
        out.push_back(required_orientation(path[i - 1], path[i], path[i + 1]));
    return out;
}

PathCost merge_cost(const std::vector<Coord>& path, const LayoutGrid& grid,
                    const CostConfig& config) {
    if (path.size() < 2)
        throw std::invalid_argument("merge_cost: path needs two endpoints");
    for (const Coord& c : path)
        if (!grid.in_bounds(c)) throw std::invalid_argument("merge_cost: coord out of bounds");
    for (std::size_t i = 1; i < path.size(); ++i) {
        int dr = path[i].row - path[i - 1].row;
        int dc = path[i].col - path[i - 1].col;
        if (std::abs(dr) + std::abs(dc) != 1)
            throw std::invalid_argument("merge_cost: path cells not 4-adjacent");
    }
    for (std::size_t i = 1; i + 1 < path.size(); ++i)
        if (grid.at(path[i]).role != CellRole::ANCILLA)
            throw std::invalid_argument("merge_cost: interior cell is not routable ancilla");

    PathCost pc;
    pc.zz1 = config.t_zz;
    pc.zz2 = config.t_zz;
    pc.xx = config.t_xx;

    std::vector<Orientation> need = imposed_orientations(path);
    for (std::size_t i = 0; i < need.size(); ++i)
        if (grid.at(path[i + 1]).orientation != need[i]) ++pc.misaligned_cells;

    if (config.rotation_mode == RotationMode::SIMULTANEOUS)
        pc.rotation = pc.misaligned_cells > 0 ? config.t_rot_patch : Cycles{0};
    else
        pc.rotation = config.t_rot_patch * pc.misaligned_cells;

    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        bool in_h = path[i].row == path[i - 1].row;
        bool out_h = path[i + 1].row == path[i].row;
        if (in_h != out_h) ++pc.turns;
    }
    pc.turn_penalty = config.c_flow_per_turn * pc.turns;

    pc.total = pc.zz1 + pc.rotation + pc.zz2 + pc.xx + pc.turn_penalty;
    return pc;
}

void commit_path_orientation(LayoutGrid& grid, const std::vector<Coord>& path) {
    std::vector<Orientation> need = imposed_orientations(path);
    for (std::size_t i = 0; i < need.size(); ++i)
        grid.set_orientation(path[i + 1], need[i]);
}

Cycles rz_sequence_cost(int n_t, int n_s, int n_h, const Cycles& tau_route,
                        const CostConfig& config) {
    if (n_t < 0 || n_s < 0 || n_h < 0)
        throw std::invalid_argument("rz_sequence_cost: negative gate count");
    return tau_route * n_t + config.t_s * n_s + config.t_h * n_h;
}

Cycles batch_latency(const std::vector<Cycles>& batch_maxima, const CostConfig& config) {
    if (batch_maxima.empty())
        throw std::invalid_argument("batch_latency: empty batch list");
    Cycles total{0};
    for (const Cycles& m : batch_maxima) total += m;
    total += config.c_reset * (std::int64_t(batch_maxima.size()) - 1);
    return total;
}

} // namespace lscomp
