// routing.hpp
//
// Deterministic routing over the free-ancilla graph: point-to-point BFS
// shortest paths, iterative nearest-terminal Steiner footprints for
// multi-target merges, and greedy batch formation for contending routes.

#ifndef LSCOMP_ROUTING_HPP
#define LSCOMP_ROUTING_HPP

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "lscomp/cycles.hpp"
#include "lscomp/layout.hpp"

namespace lscomp {

struct Route {
    Coord src, dst;
    std::vector<Coord> cells;  // mediating ancilla cells, src side first

    /// [src, cells..., dst] as consumed by merge_cost.
    std::vector<Coord> full_path() const {
        std::vector<Coord> p;
        p.reserve(cells.size() + 2);
        p.push_back(src);
        p.insert(p.end(), cells.begin(), cells.end());
        p.push_back(dst);
        return p;
    }
};

/// Shortest free-ancilla path between two patches.  Cells in `blocked` are
/// treated as occupied.  Among equal-length paths the walk takes the
/// lexicographically smallest (row, col) cell at the first differing step.
/// Returns nullopt when no connection exists.
std::optional<Route> bfs_route(const LayoutGrid& grid, const Coord& src, const Coord& dst,
                               const std::vector<Coord>& blocked = {});

struct SteinerFootprint {
    Coord root;
    std::vector<Coord> terminals;
    std::vector<Coord> tree_cells;  // union of ancilla cells, discovery order
    /// Full root-to-terminal path (endpoints included) per terminal, in the
    /// input terminal order.
    std::vector<std::vector<Coord>> root_to_terminal_paths;
};

/// Steiner-tree approximation: repeatedly attach the terminal nearest to the
/// grown tree by a shortest path (2-approximation by iterative nearest
/// terminal; ties by input terminal order, path ties as in bfs_route).  With
/// one terminal the footprint equals bfs_route.  Returns nullopt when any
/// terminal is unreachable.
std::optional<SteinerFootprint> steiner_tree(const LayoutGrid& grid, const Coord& root,
                                             const std::vector<Coord>& terminals,
                                             const std::vector<Coord>& blocked = {});

/// One admitted job inside a route batch.  `route.src == route.dst` means the
/// job needs no grid resources (pure in-place tail); such jobs always admit.
struct BatchEntry {
    int job = -1;
    Route route;
    Cycles duration;
};

/// Chooser invoked per job with the cells already claimed by the current
/// batch; returns the route and duration to commit, or nullopt to defer the
/// job to a later batch.
using SourceChooser =
    std::function<std::optional<BatchEntry>(int job, const std::vector<Coord>& batch_blocked)>;

/// Greedily packs jobs [0, n_jobs) into batches of disjoint routes: scan
/// pending jobs in order, admit each whose chooser finds a route not
/// conflicting with the batch, defer the rest.  Throws std::runtime_error if
/// a job cannot be placed even in an otherwise empty batch.
std::vector<std::vector<BatchEntry>> form_batches(int n_jobs, const SourceChooser& select);

} // namespace lscomp

#endif
