// exec_slice.hpp
//
// Slice-based executor: each packed fan-out group runs as one synchronized
// three-stage slice (multi-target CNOT sweep, rotation stage, repeated
// sweep), leftover gates and single-qubit layers get their own slices, and
// consecutive slices are separated by a grid-wide reset.  Orientations
// persist across stages and slices, so repeated sweeps ride on the
// alignment their first pass committed.

#ifndef LSCOMP_EXEC_SLICE_HPP
#define LSCOMP_EXEC_SLICE_HPP

#include <string>
#include <vector>

#include "lscomp/circuit.hpp"
#include "lscomp/cost_model.hpp"
#include "lscomp/grouping.hpp"
#include "lscomp/layout.hpp"
#include "lscomp/rotation.hpp"
#include "lscomp/schedule.hpp"

namespace lscomp {

struct SliceInfo {
    int index = -1;
    int group = -1;        // owning fan-out group, -1 for singles slices
    std::string kind;      // "group" | "point" | "singles"
    int layer = -1;
    Cycles span_a, span_b, span_c;
    Cycles total;          // span_a + span_b + span_c
};

struct SliceSchedule {
    std::vector<SliceInfo> slices;
    Cycles total_cycles;            // sum of slice totals + reset * (slices-1)
    EventSchedule events;
    std::vector<GroupPlan> plans;   // packed plan per controlled-phase layer
};

/// Runs the whole circuit slice by slice on a private copy of `grid0`.
/// Controlled-phase layers are partitioned by form_groups + pack_groups on
/// the live grid right before execution; every group, every leftover gate,
/// and every layer of single-qubit gates becomes one slice.
SliceSchedule execute_slices(const LogicalCircuit& circuit, const LayoutGrid& grid0,
                             const CostConfig& config, const RotationContext& ctx);

} // namespace lscomp

#endif
