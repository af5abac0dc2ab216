// schedule.hpp
//
// Executor-independent schedule representation: every compiler backend
// (slice, pipelined, greedy) emits a list of timed reservation intervals
// carrying both the physical extent (cells, qubits) and the logical gate
// semantics, so one validator and one trace writer serve all of them.

#ifndef LSCOMP_SCHEDULE_HPP
#define LSCOMP_SCHEDULE_HPP

#include <string>
#include <vector>

#include "lscomp/circuit.hpp"
#include "lscomp/cycles.hpp"
#include "lscomp/layout.hpp"

namespace lscomp {

enum class Stage : std::uint8_t { NONE, A, B, C };

enum class OpKind : std::uint8_t {
    MERGE,          // multi-target or point-to-point CNOT merge
    INJECT,         // EFT rotated-state injection
    T_ROUTE,        // magic-state route serving one synthesized rotation
    MSC_CULTIVATE,  // background cultivation on a claimed site
    MSC_CONSUME,    // cultivation consumptions + in-place tail of one job
    INPLACE,        // in-place H or instant rotation
    RESET           // grid-wide reset marker (no cells)
};

const char* to_string(Stage s);
const char* to_string(OpKind k);

/// Logical gate action replayed by the semantics oracle.  PHASE-style local
/// annotations are plain RZ entries.
struct SemanticOp {
    enum class Kind : std::uint8_t { CNOT, RZ, H } kind;
    int q1 = -1;  // CNOT control / single-qubit target
    int q2 = -1;  // CNOT target
    double angle = 0.0;
};

struct Interval {
    Cycles start, end;
    std::string op_id;            // stable trace label ("grp3", "g17", ...)
    int group = -1;               // owning fan-out group, -1 outside groups
    Stage stage = Stage::NONE;
    OpKind kind = OpKind::MERGE;
    std::vector<Coord> cells;     // exclusively reserved for [start, end)
    std::vector<int> qubits;      // data patches owned for [start, end)
    std::vector<int> gate_ids;    // logical gates this interval advances
    std::vector<SemanticOp> ops;  // applied in order at `start` during replay
};

struct EventSchedule {
    std::vector<Interval> intervals;
    Cycles makespan;
};

/// Structural validation: cell exclusivity, per-group stage ordering
/// (end A <= start B <= end B <= start C), per-qubit lock exclusivity,
/// dependency order between non-commuting gates, and completeness (every
/// gate scheduled).  Returns human-readable violations; empty means valid.
std::vector<std::string> check_schedule(const EventSchedule& schedule, const LayoutGrid& grid,
                                        const LogicalCircuit& circuit);

/// Canonical trace: "time_start,time_end,op_id,stage,kind,cells" rows sorted
/// by (start, end, op_id, stage); cells as semicolon-joined row.col tokens.
std::string schedule_to_csv(const EventSchedule& schedule);

} // namespace lscomp

#endif
