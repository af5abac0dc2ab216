// layout.hpp
//
// 2D patch grid: cell roles, qubit placement, reservation-based occupancy
// and the per-cell boundary-orientation map used by the merge cost model.

#ifndef LSCOMP_LAYOUT_HPP
#define LSCOMP_LAYOUT_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lscomp {

struct Coord {
    int row = 0;
    int col = 0;
    friend bool operator==(const Coord&, const Coord&) = default;
    friend std::strong_ordering operator<=>(const Coord&, const Coord&) = default;
};

inline std::string to_string(const Coord& c) {
    return std::to_string(c.row) + "." + std::to_string(c.col);
}

enum class CellRole : std::uint8_t { DATA, ANCILLA, MAGIC_STATE, WALL };

/// Which stabilizer boundary faces east/west on a patch.  All patches start
/// X_HORIZONTAL; committed routes re-orient the ancilla cells they cross.
enum class Orientation : std::uint8_t { X_HORIZONTAL, Z_HORIZONTAL };

enum class LayoutKind : std::uint8_t { COMPACT, HALF_FILLING, TWO_THIRDS_FILLING, SQUARE_SPARSE };
enum class MsDensity : std::uint8_t { ABUNDANT, STARVED };

const char* to_string(CellRole r);
const char* to_string(LayoutKind k);
const char* to_string(MsDensity d);

struct Cell {
    CellRole role = CellRole::ANCILLA;
    Orientation orientation = Orientation::X_HORIZONTAL;
    int occupant = -1;  // reservation id, -1 when free
};

struct ReserveResult {
    bool ok = false;
    std::vector<Coord> conflicts;  // offending coords when !ok
};

class LayoutGrid {
public:
    LayoutGrid() = default;
    LayoutGrid(int height, int width, CellRole fill = CellRole::ANCILLA);

    int height() const { return height_; }
    int width() const { return width_; }
    bool in_bounds(const Coord& c) const {
        return c.row >= 0 && c.row < height_ && c.col >= 0 && c.col < width_;
    }

    Cell& at(const Coord& c) { return cells_[c.row * width_ + c.col]; }
    const Cell& at(const Coord& c) const { return cells_[c.row * width_ + c.col]; }

    /// A cell routes traffic iff it is an unoccupied ANCILLA cell.
    bool routable(const Coord& c) const {
        if (!in_bounds(c)) return false;
        const Cell& cell = at(c);
        return cell.role == CellRole::ANCILLA && cell.occupant < 0;
    }

    /// 4-neighbourhood in deterministic N, W, E, S order.
    std::vector<Coord> neighbors(const Coord& c) const;

    /// Atomically reserve all coords under one id.  On any conflict nothing
    /// is reserved and the conflicting coords (including WALL cells, which
    /// always conflict) are reported.
    ReserveResult reserve_cells(const std::vector<Coord>& coords, int reservation_id);
    void release_cells(const std::vector<Coord>& coords);

    void set_orientation(const Coord& c, Orientation o) { at(c).orientation = o; }

    // -- placement ---------------------------------------------------------
    int num_qubits() const { return (int)placement_.size(); }
    Coord qubit_cell(int q) const;
    void place_qubit(int q, const Coord& c);
    /// Qubit occupying a data cell, or nullopt.
    std::optional<int> qubit_at(const Coord& c) const;

    std::vector<Coord> data_cells() const;
    std::vector<Coord> magic_state_cells() const;

    LayoutKind kind = LayoutKind::SQUARE_SPARSE;
    MsDensity ms_density = MsDensity::STARVED;

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<Cell> cells_;
    std::vector<Coord> placement_;  // qubit id -> data cell
};

/// Deterministic floorplan constructor.  Layouts are an interior pattern
/// (see README diagrams) wrapped in a two-cell boundary band: the inner band
/// is a routing corridor, the outer band hosts the magic-state patches.
///
///   COMPACT            dense data columns in pairs, one ancilla alley per pair
///   HALF_FILLING       alternating data / ancilla rows
///   TWO_THIRDS_FILLING two dense data rows per ancilla row
///   SQUARE_SPARSE      isolated data cells, ancilla on all four sides
///
/// ABUNDANT places max(4, n_qubits) magic-state patches evenly along the
/// outer band (the grid grows if the perimeter is too short); STARVED places
/// exactly four, at the corners.
LayoutGrid build_layout(LayoutKind kind, int n_qubits, MsDensity density);

/// JSON round-trip (role matrix as char rows 'D','A','M','#', placement map,
/// magic-state coords).
std::string layout_to_json(const LayoutGrid& grid);
LayoutGrid layout_from_json(const std::string& json_text);

} // namespace lscomp

#endif
