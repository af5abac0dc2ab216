// Merge-cost accounting: stage breakdown, orientation persistence,
// rotation-sequence and batch latency formulas.

#include "doctest.h"

#include <stdexcept>

#include "lscomp/cost_model.hpp"

using namespace lscomp;

namespace {

/// 1 x 7 ancilla strip with data patches at both ends.
LayoutGrid strip_grid() {
    LayoutGrid g(3, 9);
    g.at({1, 1}).role = CellRole::DATA;
    g.at({1, 7}).role = CellRole::DATA;
    return g;
}

std::vector<Coord> strip_path() {
    std::vector<Coord> p;
    for (int c = 1; c <= 7; ++c) p.push_back({1, c});
    return p;
}

} // namespace

TEST_SUITE("cost_model") {

TEST_CASE("point-to-point CNOT: 4 cycles misaligned, 3 aligned") {
    LayoutGrid g = strip_grid();
    CostConfig cfg;
    // Fresh cells face X_HORIZONTAL; horizontal travel needs Z_HORIZONTAL,
    // so the first merge pays the simultaneous rotation cycle.
    PathCost first = merge_cost(strip_path(), g, cfg);
    CHECK(first.total == Cycles{4});
    CHECK(first.zz1 == Cycles{1});
    CHECK(first.rotation == Cycles{1});
    CHECK(first.zz2 == Cycles{1});
    CHECK(first.xx == Cycles{1});
    CHECK(first.misaligned_cells == 5);  // interior cells only, ends are patches
    CHECK(first.turns == 0);

    commit_path_orientation(g, strip_path());
    PathCost second = merge_cost(strip_path(), g, cfg);
    CHECK(second.total == Cycles{3});
    CHECK(second.rotation == Cycles{0});
    CHECK(second.misaligned_cells == 0);
}

TEST_CASE("vertical travel is aligned from the start") {
    LayoutGrid g(9, 3);
    g.at({1, 1}).role = CellRole::DATA;
    g.at({7, 1}).role = CellRole::DATA;
    std::vector<Coord> path;
    for (int r = 1; r <= 7; ++r) path.push_back({r, 1});
    CostConfig cfg;
    PathCost c = merge_cost(path, g, cfg);
    CHECK(c.total == Cycles{3});  // X_HORIZONTAL already serves vertical hops
    CHECK(c.misaligned_cells == 0);
}

TEST_CASE("per-segment rotation pays each misaligned cell") {
    LayoutGrid g = strip_grid();
    CostConfig cfg;
    cfg.rotation_mode = RotationMode::PER_SEGMENT;
    PathCost c = merge_cost(strip_path(), g, cfg);
    CHECK(c.rotation == Cycles{5});  // one cycle per misaligned interior cell
    CHECK(c.total == Cycles{8});
}

TEST_CASE("turns are counted and optionally priced") {
    LayoutGrid g(6, 6);
    g.at({1, 1}).role = CellRole::DATA;
    g.at({4, 4}).role = CellRole::DATA;
    // Dogleg: H H V V H V -> three direction changes.
    std::vector<Coord> path{{1, 1}, {1, 2}, {1, 3}, {2, 3}, {3, 3}, {3, 4}, {4, 4}};
    CostConfig cfg;
    PathCost flat = merge_cost(path, g, cfg);
    CHECK(flat.turns == 3);
    CHECK(flat.turn_penalty == Cycles{0});

    cfg.c_flow_per_turn = Cycles{1, 2};
    PathCost priced = merge_cost(path, g, cfg);
    CHECK(priced.turn_penalty == Cycles{3, 2});
    CHECK(priced.total == flat.total + Cycles{3, 2});
}

TEST_CASE("merge_cost validates the path") {
    LayoutGrid g = strip_grid();
    CostConfig cfg;
    CHECK_THROWS_AS(merge_cost({{1, 1}}, g, cfg), std::invalid_argument);  // too short
    CHECK_THROWS_AS(merge_cost({{1, 1}, {1, 3}}, g, cfg), std::invalid_argument);  // gap
    std::vector<Coord> through_data{{1, 1}, {1, 2}, {1, 1}, {1, 2}, {1, 3}};
    CHECK_THROWS_AS(merge_cost(through_data, g, cfg), std::invalid_argument);  // data interior

    LayoutGrid walled = strip_grid();
    walled.at({1, 4}).role = CellRole::WALL;
    CHECK_THROWS_AS(merge_cost(strip_path(), walled, cfg), std::invalid_argument);
}

TEST_CASE("imposed orientations follow travel direction") {
    // L-shaped path: two horizontal hops, then down.
    std::vector<Coord> path{{1, 1}, {1, 2}, {1, 3}, {2, 3}, {3, 3}};
    std::vector<Orientation> o = imposed_orientations(path);
    REQUIRE(o.size() == 3);  // interior cells only
    CHECK(o[0] == Orientation::Z_HORIZONTAL);  // straight horizontal
    CHECK(o[1] == Orientation::X_HORIZONTAL);  // corner: outgoing vertical wins
    CHECK(o[2] == Orientation::X_HORIZONTAL);  // straight vertical
}

TEST_CASE("rotation sequence cost formula") {
    CostConfig cfg;
    // tau = tau_route * n_t + 1.5 * n_s + 1 * n_h
    CHECK(rz_sequence_cost(2, 1, 1, Cycles{4}, cfg) == Cycles{21, 2});  // 10.5
    CHECK(rz_sequence_cost(0, 2, 3, Cycles{99}, cfg) == Cycles{6});     // no route term
    CHECK(rz_sequence_cost(0, 0, 0, Cycles{4}, cfg) == Cycles{0});
}

TEST_CASE("batch latency adds one reset between batches") {
    CostConfig cfg;
    CHECK(batch_latency({Cycles{5}, Cycles{7}}, cfg) == Cycles{13});
    CHECK(batch_latency({Cycles{3}, Cycles{3}, Cycles{3}}, cfg) == Cycles{11});
    CHECK(batch_latency({Cycles{5}}, cfg) == Cycles{5});
    CHECK_THROWS_AS(batch_latency({}, cfg), std::invalid_argument);
}

TEST_CASE("cost config validation") {
    CostConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.t_rz_inject = Cycles{-1};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CostConfig k;
    k.ms_top_k = 0;
    CHECK_THROWS_AS(k.validate(), std::invalid_argument);
}

} // TEST_SUITE
