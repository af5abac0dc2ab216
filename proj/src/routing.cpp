#include "lscomp/routing.hpp"

#include <deque>
#include <stdexcept>

namespace lscomp {

namespace {

constexpr int kUnreached = -1;

struct DistanceField {
    int width = 0;
    std::vector<int> dist;
    int& at(const Coord& c) { return dist[c.row * width + c.col]; }
    int at(const Coord& c) const { return dist[c.row * width + c.col]; }
};

/// dist[a] = cells on the shortest free-ancilla path from a to `goal`,
/// counting a itself (1 when a is 4-adjacent to goal).
DistanceField distance_to(const LayoutGrid& grid, const Coord& goal,
                          const std::vector<char>& barred) {
    DistanceField f;
    f.width = grid.width();
    f.dist.assign(std::size_t(grid.height()) * grid.width(), kUnreached);
    std::deque<Coord> queue;
    for (const Coord& n : grid.neighbors(goal)) {
        if (!grid.routable(n) || barred[n.row * f.width + n.col]) continue;
        if (f.at(n) != kUnreached) continue;
        f.at(n) = 1;
        queue.push_back(n);
    }
    while (!queue.empty()) {
        Coord c = queue.front();
        queue.pop_front();
        for (const Coord& n : grid.neighbors(c)) {
            if (!grid.routable(n) || barred[n.row * f.width + n.col]) continue;
            if (f.at(n) != kUnreached) continue;
            f.at(n) = f.at(c) + 1;
            queue.push_back(n);
        }
    }
    return f;
}

std::vector<char> bar_mask(const LayoutGrid& grid, const std::vector<Coord>& blocked) {
    std::vector<char> m(std::size_t(grid.height()) * grid.width(), 0);
    for (const Coord& c : blocked)
        if (grid.in_bounds(c)) m[c.row * grid.width() + c.col] = 1;
    return m;
}

/// Walk from the best start cell down the distance field, taking the
/// lexicographically smallest cell at every tie.
std::vector<Coord> lex_walk(const LayoutGrid& grid, const DistanceField& f,
                            const std::vector<char>& barred,
                            const std::vector<Coord>& start_candidates) {
    Coord best{-1, -1};
    int best_d = kUnreached;
    for (const Coord& s : start_candidates) {
        if (!grid.routable(s) || barred[s.row * f.width + s.col]) continue;
        int d = f.at(s);
        if (d == kUnreached) continue;
        if (best_d == kUnreached || d < best_d || (d == best_d && s < best)) {
            best = s;
            best_d = d;
        }
    }
    if (best_d == kUnreached) return {};
    std::vector<Coord> cells{best};
    Coord cur = best;
    while (f.at(cur) > 1) {
        Coord next{-1, -1};
        for (const Coord& n : grid.neighbors(cur)) {
            if (!grid.routable(n) || barred[n.row * f.width + n.col]) continue;
            if (f.at(n) != f.at(cur) - 1) continue;
            if (next.row < 0 || n < next) next = n;
        }
        if (next.row < 0) throw std::logic_error("lex_walk: broken distance field");
        cells.push_back(next);
        cur = next;
    }
    return cells;
}

} // namespace

std::optional<Route> bfs_route(const LayoutGrid& grid, const Coord& src, const Coord& dst,
                               const std::vector<Coord>& blocked) {
    if (!grid.in_bounds(src) || !grid.in_bounds(dst))
        throw std::invalid_argument("bfs_route: endpoint out of bounds");
    if (src == dst) throw std::invalid_argument("bfs_route: identical endpoints");
    std::vector<char> barred = bar_mask(grid, blocked);
    DistanceField f = distance_to(grid, dst, barred);
    std::vector<Coord> cells = lex_walk(grid, f, barred, grid.neighbors(src));
    if (cells.empty()) return std::nullopt;
    return Route{src, dst, std::move(cells)};
}

namespace {

/// One nearest-terminal growth pass.  Each round the closest unconnected
/// terminal joins the tree through a shortest segment starting beside an
/// existing tree cell, so tree_cells always induce one connected ancilla
/// component.  `first_ti` (when < terminals.size()) forces the first
/// attachment to that terminal, and `forced_start` pins the first segment's
/// entry cell beside the root.
std::optional<SteinerFootprint> grow_steiner(const LayoutGrid& grid, const Coord& root,
                                             const std::vector<Coord>& terminals,
                                             const std::vector<char>& barred,
                                             std::size_t first_ti,
                                             std::optional<Coord> forced_start = std::nullopt) {
    SteinerFootprint fp;
    fp.root = root;
    fp.terminals = terminals;
    fp.root_to_terminal_paths.resize(terminals.size());

    int w = grid.width();
    // parent[cell] chains every tree cell back toward the root.
    std::vector<Coord> parent(std::size_t(grid.height()) * grid.width(), Coord{-1, -1});
    auto in_tree = [&](const Coord& c) {
        for (const Coord& t : fp.tree_cells)
            if (t == c) return true;
        return false;
    };
    auto path_from_root = [&](const Coord& tip) {
        std::vector<Coord> rev{tip};
        Coord cur = tip;
        while (parent[cur.row * w + cur.col].row >= 0) {
            cur = parent[cur.row * w + cur.col];
            rev.push_back(cur);
        }
        std::vector<Coord> path{root};
        path.insert(path.end(), rev.rbegin(), rev.rend());
        return path;
    };

    std::vector<bool> connected(terminals.size(), false);
    for (std::size_t round = 0; round < terminals.size(); ++round) {
        // Tree cells are barred from traversal: any useful connection through
        // them has an equally short suffix starting beside the tree.
        std::vector<char> barred_now = barred;
        for (const Coord& c : fp.tree_cells) barred_now[c.row * w + c.col] = 1;

        int best_terminal = -1;
        int best_d = kUnreached;
        DistanceField best_field;
        Coord best_direct{-1, -1};
        for (std::size_t ti = 0; ti < terminals.size(); ++ti) {
            if (connected[ti]) continue;
            if (round == 0 && first_ti < terminals.size() && ti != first_ti) continue;
            // Zero new cells when an existing tree cell already borders the
            // terminal (lex-smallest such cell).
            Coord direct{-1, -1};
            for (const Coord& n : grid.neighbors(terminals[ti]))
                if (in_tree(n) && (direct.row < 0 || n < direct)) direct = n;
            if (direct.row >= 0) {
                if (best_d == kUnreached || 0 < best_d) {
                    best_terminal = (int)ti;
                    best_d = 0;
                    best_direct = direct;
                }
                continue;
            }
            DistanceField f = distance_to(grid, terminals[ti], barred_now);
            int d = kUnreached;
            auto sources = fp.tree_cells.empty() ? std::vector<Coord>{root} : fp.tree_cells;
            for (const Coord& anchor : sources)
                for (const Coord& s : grid.neighbors(anchor)) {
                    if (!grid.routable(s) || barred_now[s.row * w + s.col]) continue;
                    int sd = f.at(s);
                    if (sd != kUnreached && (d == kUnreached || sd < d)) d = sd;
                }
            if (d == kUnreached) continue;
            if (best_d == kUnreached || d < best_d) {
                best_terminal = (int)ti;
                best_d = d;
                best_field = std::move(f);
            }
        }
        if (best_terminal < 0) return std::nullopt;  // some terminal unreachable

        if (best_d == 0) {
            connected[best_terminal] = true;
            auto path = path_from_root(best_direct);
            path.push_back(terminals[best_terminal]);
            fp.root_to_terminal_paths[best_terminal] = std::move(path);
            continue;
        }

        std::vector<Coord> starts;
        if (fp.tree_cells.empty()) {
            if (forced_start)
                starts.push_back(*forced_start);
            else
                starts = grid.neighbors(root);
        } else {
            for (const Coord& t : fp.tree_cells)
                for (const Coord& s : grid.neighbors(t))
                    if (!in_tree(s)) starts.push_back(s);
        }
        std::vector<char> barred_walk = barred;
        for (const Coord& c : fp.tree_cells) barred_walk[c.row * w + c.col] = 1;
        std::vector<Coord> segment = lex_walk(grid, best_field, barred_walk, starts);
        if (segment.empty()) {
            if (forced_start) return std::nullopt;  // this seeding cannot reach
            throw std::logic_error("steiner_tree: lost attachment path");
        }

        // Chain the new segment into the rooted tree.
        Coord attach{-1, -1};
        if (!fp.tree_cells.empty()) {
            for (const Coord& n : grid.neighbors(segment.front()))
                if (in_tree(n) && (attach.row < 0 || n < attach)) attach = n;
        }
        parent[segment.front().row * w + segment.front().col] = attach;
        for (std::size_t i = 1; i < segment.size(); ++i)
            parent[segment[i].row * w + segment[i].col] = segment[i - 1];
        for (const Coord& c : segment) fp.tree_cells.push_back(c);

        connected[best_terminal] = true;
        auto path = path_from_root(segment.back());
        path.push_back(terminals[best_terminal]);
        fp.root_to_terminal_paths[best_terminal] = std::move(path);
    }
    return fp;
}

} // namespace

std::optional<SteinerFootprint> steiner_tree(const LayoutGrid& grid, const Coord& root,
                                             const std::vector<Coord>& terminals,
                                             const std::vector<Coord>& blocked) {
    if (terminals.empty()) throw std::invalid_argument("steiner_tree: no terminals");
    std::vector<char> barred = bar_mask(grid, blocked);
    int w = grid.width();

    // Lower bound: any footprint reaches its farthest terminal, so it has at
    // least max_t (shortest mediating-cell distance root -> t) cells.
    std::size_t lower_bound = 1;
    for (const Coord& t : terminals) {
        DistanceField f = distance_to(grid, t, barred);
        int d = kUnreached;
        for (const Coord& s : grid.neighbors(root)) {
            if (!grid.routable(s) || barred[s.row * w + s.col]) continue;
            int sd = f.at(s);
            if (sd != kUnreached && (d == kUnreached || sd < d)) d = sd;
        }
        if (d == kUnreached) return std::nullopt;  // terminal unreachable outright
        lower_bound = std::max(lower_bound, std::size_t(d));
    }

    // Canonical nearest-first pass; good enough whenever it proves itself
    // within twice the lower bound (always, on open production layouts).
    auto within = [&](const std::optional<SteinerFootprint>& c) {
        return c && c->tree_cells.size() <= 2 * lower_bound;
    };
    std::optional<SteinerFootprint> best = grow_steiner(grid, root, terminals, barred,
                                                        terminals.size());
    if (within(best)) return best;

    // A nearest-first pass can enter a dead-end pocket with its first segment
    // and seal itself off or pay a long detour for the rest.  Restart over
    // every (first terminal, first entry cell) seeding and keep the smallest
    // footprint; the scan order keeps the result deterministic.
    for (std::size_t first = 0; first < terminals.size() && !within(best); ++first)
        for (const Coord& s0 : grid.neighbors(root)) {
            if (!grid.routable(s0) || barred[s0.row * w + s0.col]) continue;
            auto candidate = grow_steiner(grid, root, terminals, barred, first, s0);
            if (candidate && (!best || candidate->tree_cells.size() < best->tree_cells.size()))
                best = std::move(candidate);
            if (within(best)) break;
        }
    return best;
}

std::vector<std::vector<BatchEntry>> form_batches(int n_jobs, const SourceChooser& select) {
    std::vector<std::vector<BatchEntry>> batches;
    std::vector<int> pending;
    for (int j = 0; j < n_jobs; ++j) pending.push_back(j);
    while (!pending.empty()) {
        std::vector<BatchEntry> batch;
        std::vector<Coord> claimed;
        std::vector<int> deferred;
        for (int job : pending) {
            std::optional<BatchEntry> entry = select(job, claimed);
            if (!entry) {
                deferred.push_back(job);
                continue;
            }
            entry->job = job;
            if (!(entry->route.src == entry->route.dst)) {
                claimed.push_back(entry->route.src);
                claimed.push_back(entry->route.dst);
                for (const Coord& c : entry->route.cells) claimed.push_back(c);
            }
            batch.push_back(std::move(*entry));
        }
        if (batch.empty())
            throw std::runtime_error("form_batches: job cannot be routed on an empty batch");
        batches.push_back(std::move(batch));
        pending = std::move(deferred);
    }
    return batches;
}

} // namespace lscomp
