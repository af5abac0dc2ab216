// Patch-grid floorplans, reservations, and the JSON round-trip.

#include "doctest.h"

#include <set>
#include <stdexcept>

#include "lscomp/layout.hpp"

using namespace lscomp;

TEST_SUITE("layout") {

TEST_CASE("every floorplan places every qubit on a data cell") {
    for (LayoutKind kind : {LayoutKind::COMPACT, LayoutKind::HALF_FILLING,
                            LayoutKind::TWO_THIRDS_FILLING, LayoutKind::SQUARE_SPARSE}) {
        for (int n : {1, 4, 9, 16}) {
            LayoutGrid g = build_layout(kind, n, MsDensity::STARVED);
            CHECK(g.num_qubits() == n);
            std::set<Coord> seen;
            for (int q = 0; q < n; ++q) {
                Coord c = g.qubit_cell(q);
                CHECK(g.at(c).role == CellRole::DATA);
                CHECK(g.qubit_at(c) == q);
                CHECK(seen.insert(c).second);  // distinct cells
            }
            CHECK((int)g.data_cells().size() >= n);
        }
    }
}

TEST_CASE("square-sparse isolates each data cell") {
    LayoutGrid g = build_layout(LayoutKind::SQUARE_SPARSE, 9, MsDensity::STARVED);
    for (const Coord& d : g.data_cells()) {
        auto ns = g.neighbors(d);
        CHECK(ns.size() == 4);  // never on the border
        for (const Coord& n : ns) CHECK(g.at(n).role == CellRole::ANCILLA);
    }
}

TEST_CASE("compact packs data columns in pairs") {
    LayoutGrid g = build_layout(LayoutKind::COMPACT, 8, MsDensity::STARVED);
    // Every data cell has a horizontally adjacent data partner.
    for (const Coord& d : g.data_cells()) {
        bool paired = false;
        for (const Coord& n : g.neighbors(d))
            paired |= n.row == d.row && g.at(n).role == CellRole::DATA;
        CHECK(paired);
    }
}

TEST_CASE("magic-state density modes") {
    LayoutGrid starved = build_layout(LayoutKind::SQUARE_SPARSE, 9, MsDensity::STARVED);
    CHECK(starved.magic_state_cells().size() == 4);

    LayoutGrid abundant = build_layout(LayoutKind::SQUARE_SPARSE, 9, MsDensity::ABUNDANT);
    CHECK(abundant.magic_state_cells().size() >= 9);

    LayoutGrid small = build_layout(LayoutKind::SQUARE_SPARSE, 2, MsDensity::ABUNDANT);
    CHECK(small.magic_state_cells().size() >= 4);
}

TEST_CASE("reservations are atomic and exclusive") {
    LayoutGrid g(4, 4);
    Coord a{1, 1}, b{1, 2}, c{2, 2};
    REQUIRE(g.reserve_cells({a, b}, 7).ok);
    CHECK_FALSE(g.routable(a));

    ReserveResult clash = g.reserve_cells({b, c}, 8);
    CHECK_FALSE(clash.ok);
    REQUIRE(clash.conflicts.size() == 1);
    CHECK(clash.conflicts[0] == b);
    CHECK(g.routable(c));  // nothing was taken on failure

    g.release_cells({a, b});
    CHECK(g.routable(a));
    CHECK(g.reserve_cells({b, c}, 8).ok);
}

TEST_CASE("walls and data cells never reserve") {
    LayoutGrid g(3, 3);
    g.at({0, 0}).role = CellRole::WALL;
    g.at({1, 1}).role = CellRole::DATA;
    CHECK_FALSE(g.reserve_cells({{0, 0}}, 1).ok);
    CHECK_FALSE(g.routable({1, 1}));
    CHECK_FALSE(g.reserve_cells({{9, 9}}, 1).ok);  // out of bounds conflicts
}

TEST_CASE("neighbors come in deterministic N W E S order") {
    LayoutGrid g(3, 3);
    auto ns = g.neighbors({1, 1});
    REQUIRE(ns.size() == 4);
    CHECK(ns[0] == Coord{0, 1});
    CHECK(ns[1] == Coord{1, 0});
    CHECK(ns[2] == Coord{1, 2});
    CHECK(ns[3] == Coord{2, 1});
    auto corner = g.neighbors({0, 0});
    CHECK(corner.size() == 2);
}

TEST_CASE("placement errors") {
    LayoutGrid g(3, 3);
    CHECK_THROWS_AS(g.qubit_cell(0), std::out_of_range);
    g.at({1, 1}).role = CellRole::DATA;
    g.place_qubit(0, {1, 1});
    CHECK(g.qubit_cell(0) == Coord{1, 1});
    CHECK_THROWS_AS(g.place_qubit(1, {0, 0}), std::invalid_argument);  // not a data cell
}

TEST_CASE("json round-trip preserves the grid") {
    for (MsDensity d : {MsDensity::STARVED, MsDensity::ABUNDANT}) {
        LayoutGrid g = build_layout(LayoutKind::HALF_FILLING, 6, d);
        std::string js = layout_to_json(g);
        LayoutGrid back = layout_from_json(js);
        CHECK(back.height() == g.height());
        CHECK(back.width() == g.width());
        CHECK(back.kind == g.kind);
        CHECK(back.ms_density == g.ms_density);
        CHECK(back.num_qubits() == g.num_qubits());
        for (int q = 0; q < g.num_qubits(); ++q) CHECK(back.qubit_cell(q) == g.qubit_cell(q));
        for (int r = 0; r < g.height(); ++r)
            for (int c = 0; c < g.width(); ++c)
                CHECK(back.at({r, c}).role == g.at({r, c}).role);
        CHECK(layout_to_json(back) == js);  // serialization is canonical
    }
}

TEST_CASE("layout kinds parse from json by name") {
    LayoutGrid g = build_layout(LayoutKind::TWO_THIRDS_FILLING, 4, MsDensity::STARVED);
    LayoutGrid back = layout_from_json(layout_to_json(g));
    CHECK(back.kind == LayoutKind::TWO_THIRDS_FILLING);
}

} // TEST_SUITE
