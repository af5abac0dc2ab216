#include "lscomp/layout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace lscomp {

const char* to_string(CellRole r) {
    switch (r) {
        case CellRole::DATA: return "DATA";
        case CellRole::ANCILLA: return "ANCILLA";
        case CellRole::MAGIC_STATE: return "MAGIC_STATE";
        case CellRole::WALL: return "WALL";
    }
    return "?";
}

const char* to_string(LayoutKind k) {
    switch (k) {
        case LayoutKind::COMPACT: return "compact";
        case LayoutKind::HALF_FILLING: return "half";
        case LayoutKind::TWO_THIRDS_FILLING: return "twothirds";
        case LayoutKind::SQUARE_SPARSE: return "sparse";
    }
    return "?";
}

const char* to_string(MsDensity d) {
    return d == MsDensity::ABUNDANT ? "abundant" : "starved";
}

LayoutGrid::LayoutGrid(int height, int width, CellRole fill)
    : height_(height), width_(width), cells_(std::size_t(height) * width) {
    if (height <= 0 || width <= 0)
        throw std::invalid_argument("LayoutGrid: non-positive dimensions");
    for (Cell& c : cells_) c.role = fill;
}

std::vector<Coord> LayoutGrid::neighbors(const Coord& c) const {
    static const int dr[4] = {-1, 0, 0, 1};
    static const int dc[4] = {0, -1, 1, 0};
    std::vector<Coord> out;
    out.reserve(4);
    for (int i = 0; i < 4; ++i) {
        Coord n{c.row + dr[i], c.col + dc[i]};
        if (in_bounds(n)) out.push_back(n);
    }
    return out;
}

ReserveResult LayoutGrid::reserve_cells(const std::vector<Coord>& coords, int reservation_id) {
    ReserveResult res;
    for (const Coord& c : coords) {
        if (!in_bounds(c)) {
            res.conflicts.push_back(c);
            continue;
        }
        const Cell& cell = at(c);
        if (cell.role == CellRole::WALL || cell.occupant >= 0) res.conflicts.push_back(c);
    }
    if (!res.conflicts.empty()) return res;
    for (const Coord& c : coords) at(c).occupant = reservation_id;
    res.ok = true;
    return res;
}

void LayoutGrid::release_cells(const std::vector<Coord>& coords) {
    for (const Coord& c : coords)
        if (in_bounds(c)) at(c).occupant = -1;
}

Coord LayoutGrid::qubit_cell(int q) const {
    if (q < 0 || q >= (int)placement_.size())
        throw std::out_of_range("qubit_cell: unknown qubit " + std::to_string(q));
    return placement_[q];
}

void LayoutGrid::place_qubit(int q, const Coord& c) {
    if (!in_bounds(c) || at(c).role != CellRole::DATA)
        throw std::invalid_argument("place_qubit: not a DATA cell");
    for (const Coord& p : placement_)
        if (p == c) throw std::invalid_argument("place_qubit: cell already occupied");
    if (q != (int)placement_.size())
        throw std::invalid_argument("place_qubit: qubits must be placed in order");
    placement_.push_back(c);
}

std::optional<int> LayoutGrid::qubit_at(const Coord& c) const {
    for (int q = 0; q < (int)placement_.size(); ++q)
        if (placement_[q] == c) return q;
    return std::nullopt;
}

std::vector<Coord> LayoutGrid::data_cells() const {
    std::vector<Coord> out;
    for (int r = 0; r < height_; ++r)
        for (int c = 0; c < width_; ++c)
            if (at({r, c}).role == CellRole::DATA) out.push_back({r, c});
    return out;
}

std::vector<Coord> LayoutGrid::magic_state_cells() const {
    std::vector<Coord> out;
    for (int r = 0; r < height_; ++r)
        for (int c = 0; c < width_; ++c)
            if (at({r, c}).role == CellRole::MAGIC_STATE) out.push_back({r, c});
    return out;
}

namespace {

int iceil_div(int a, int b) { return (a + b - 1) / b; }

int isqrt_ceil(int n) {
    int r = (int)std::ceil(std::sqrt((double)n));
    while (r * r < n) ++r;
    while (r > 1 && (r - 1) * (r - 1) >= n) --r;
    return r;
}

/// Interior data/ancilla pattern for one layout kind, expressed as a char
/// matrix of 'D' and 'A'.  Capacity always >= n.
std::vector<std::string> interior_pattern(LayoutKind kind, int n) {
    std::vector<std::string> rows;
    switch (kind) {
        case LayoutKind::COMPACT: {
            // Paired data columns separated by single ancilla alleys:
            //   D D A D D A D D
            // Vertical movement happens in the alleys, horizontal movement
            // only along the boundary corridor -- the congested floorplan.
            int r = isqrt_ceil(n);
            int groups = iceil_div(n, 2 * r);
            int w = 3 * groups - 1;  // trailing alley replaced by the corridor
            for (int i = 0; i < r; ++i) {
                std::string row(w, 'A');
                for (int g = 0; g < groups; ++g) {
                    row[3 * g] = 'D';
                    row[3 * g + 1] = 'D';
                }
                rows.push_back(row);
            }
            break;
        }
        case LayoutKind::HALF_FILLING: {
            // Alternating dense data rows and ancilla rows.
            int w = isqrt_ceil(n);
            int r = iceil_div(n, w);
            for (int i = 0; i < r; ++i) {
                rows.push_back(std::string(w, 'D'));
                if (i + 1 < r) rows.push_back(std::string(w, 'A'));
            }
            break;
        }
        case LayoutKind::TWO_THIRDS_FILLING: {
            // Two dense data rows per ancilla row.
            int w = isqrt_ceil(n);
            int bands = iceil_div(n, 2 * w);
            for (int b = 0; b < bands; ++b) {
                rows.push_back(std::string(w, 'D'));
                rows.push_back(std::string(w, 'D'));
                if (b + 1 < bands) rows.push_back(std::string(w, 'A'));
            }
            break;
        }
        case LayoutKind::SQUARE_SPARSE: {
            // Isolated data cells with ancilla on all four sides.
            int a = isqrt_ceil(n);
            int b = iceil_div(n, a);
            int h = 2 * a - 1, w = 2 * b - 1;
            for (int i = 0; i < h; ++i) {
                std::string row(w, 'A');
                if (i % 2 == 0)
                    for (int j = 0; j < w; j += 2) row[j] = 'D';
                rows.push_back(row);
            }
            break;
        }
    }
    return rows;
}

/// Clockwise walk over the outermost ring, starting at (0,0).
std::vector<Coord> perimeter_walk(int h, int w) {
    std::vector<Coord> out;
    for (int c = 0; c < w; ++c) out.push_back({0, c});
    for (int r = 1; r < h; ++r) out.push_back({r, w - 1});
    for (int c = w - 2; c >= 0; --c) out.push_back({h - 1, c});
    for (int r = h - 2; r >= 1; --r) out.push_back({r, 0});
    return out;
}

} // namespace

LayoutGrid build_layout(LayoutKind kind, int n_qubits, MsDensity density) {
    if (n_qubits < 1) throw std::invalid_argument("build_layout: need at least one qubit");

    std::vector<std::string> pattern = interior_pattern(kind, n_qubits);
    int ih = (int)pattern.size();
    int iw = (int)pattern[0].size();

    int n_ms = density == MsDensity::ABUNDANT ? std::max(4, n_qubits) : 4;

    // Two-cell boundary band: inner ring is a routing corridor, outer ring
    // carries the magic-state patches.  Grow with extra ancilla padding when
    // the perimeter cannot fit the requested patch count.
    int h = ih + 4, w = iw + 4;
    while (2 * (h + w) - 4 < n_ms) {
        if (w <= h) ++w; else ++h;
    }

    LayoutGrid grid(h, w, CellRole::ANCILLA);
    grid.kind = kind;
    grid.ms_density = density;

    for (int r = 0; r < ih; ++r)
        for (int c = 0; c < iw; ++c)
            if (pattern[r][c] == 'D') grid.at({r + 2, c + 2}).role = CellRole::DATA;

    // Magic-state patches on the outer ring.
    std::vector<Coord> ring = perimeter_walk(h, w);
    if (density == MsDensity::STARVED) {
        grid.at({0, 0}).role = CellRole::MAGIC_STATE;
        grid.at({0, w - 1}).role = CellRole::MAGIC_STATE;
        grid.at({h - 1, w - 1}).role = CellRole::MAGIC_STATE;
        grid.at({h - 1, 0}).role = CellRole::MAGIC_STATE;
    } else {
        int p = (int)ring.size();
        for (int i = 0; i < n_ms; ++i)
            grid.at(ring[std::int64_t(i) * p / n_ms]).role = CellRole::MAGIC_STATE;
    }

    // Row-major placement; surplus data cells become routing ancilla so that
    // every DATA cell hosts exactly one logical qubit.
    std::vector<Coord> data = grid.data_cells();
    if ((int)data.size() < n_qubits)
        throw std::logic_error("build_layout: interior capacity bug");
    for (int q = 0; q < n_qubits; ++q) grid.place_qubit(q, data[q]);
    for (int i = n_qubits; i < (int)data.size(); ++i)
        grid.at(data[i]).role = CellRole::ANCILLA;

    return grid;
}

std::string layout_to_json(const LayoutGrid& grid) {
    nlohmann::json j;
    j["height"] = grid.height();
    j["width"] = grid.width();
    j["kind"] = to_string(grid.kind);
    j["ms_density"] = to_string(grid.ms_density);
    std::vector<std::string> rows;
    for (int r = 0; r < grid.height(); ++r) {
        std::string row(grid.width(), 'A');
        for (int c = 0; c < grid.width(); ++c) {
            switch (grid.at({r, c}).role) {
                case CellRole::DATA: row[c] = 'D'; break;
                case CellRole::ANCILLA: row[c] = 'A'; break;
                case CellRole::MAGIC_STATE: row[c] = 'M'; break;
                case CellRole::WALL: row[c] = '#'; break;
            }
        }
        rows.push_back(row);
    }
    j["roles"] = rows;
    nlohmann::json placement = nlohmann::json::object();
    for (int q = 0; q < grid.num_qubits(); ++q) {
        Coord c = grid.qubit_cell(q);
        placement[std::to_string(q)] = {c.row, c.col};
    }
    j["placement"] = placement;
    nlohmann::json ms = nlohmann::json::array();
    for (const Coord& c : grid.magic_state_cells()) ms.push_back({c.row, c.col});
    j["ms_patches"] = ms;
    return j.dump(2);
}

LayoutGrid layout_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    int h = j.at("height").get<int>();
    int w = j.at("width").get<int>();
    LayoutGrid grid(h, w);
    const auto& rows = j.at("roles");
    if ((int)rows.size() != h)
        throw std::invalid_argument("layout_from_json: role matrix height mismatch");
    for (int r = 0; r < h; ++r) {
        std::string row = rows[r].get<std::string>();
        if ((int)row.size() != w)
            throw std::invalid_argument("layout_from_json: role matrix width mismatch");
        for (int c = 0; c < w; ++c) {
            CellRole role;
            switch (row[c]) {
                case 'D': role = CellRole::DATA; break;
                case 'A': role = CellRole::ANCILLA; break;
                case 'M': role = CellRole::MAGIC_STATE; break;
                case '#': role = CellRole::WALL; break;
                default:
                    throw std::invalid_argument("layout_from_json: bad role char");
            }
            grid.at({r, c}).role = role;
        }
    }
    if (j.contains("kind")) {
        std::string k = j["kind"].get<std::string>();
        if (k == "compact") grid.kind = LayoutKind::COMPACT;
        else if (k == "half") grid.kind = LayoutKind::HALF_FILLING;
        else if (k == "twothirds") grid.kind = LayoutKind::TWO_THIRDS_FILLING;
        else grid.kind = LayoutKind::SQUARE_SPARSE;
    }
    if (j.contains("ms_density"))
        grid.ms_density = j["ms_density"].get<std::string>() == "abundant"
                              ? MsDensity::ABUNDANT
                              : MsDensity::STARVED;
    if (j.contains("placement")) {
        const auto& pl = j["placement"];
        for (int q = 0; q < (int)pl.size(); ++q) {
            const auto& rc = pl.at(std::to_string(q));
            grid.place_qubit(q, {rc[0].get<int>(), rc[1].get<int>()});
        }
    }
    return grid;
}

} // namespace lscomp
