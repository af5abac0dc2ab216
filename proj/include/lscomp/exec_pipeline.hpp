// exec_pipeline.hpp
//
// Event-driven cycle-accurate executor: a priority queue advances time to
// the next completion, releasing cells and immediately dispatching newly
// ready work.  Stages pipeline freely across fan-out groups (stage A of one
// group beside stage B of another), dispatch prefers closing sweeps
// (C > B > A), multi-target groups are re-formed dynamically on the live
// grid, and a gate that cannot join any group falls back to a point-to-point
// route, so forward progress never blocks.

#ifndef LSCOMP_EXEC_PIPELINE_HPP
#define LSCOMP_EXEC_PIPELINE_HPP

#include "lscomp/circuit.hpp"
#include "lscomp/cost_model.hpp"
#include "lscomp/layout.hpp"
#include "lscomp/rotation.hpp"
#include "lscomp/schedule.hpp"

namespace lscomp {

struct PipelineSchedule {
    EventSchedule events;
    int groups_formed = 0;
};

/// Runs the whole circuit on a private copy of `grid0`.  Throws
/// std::runtime_error with a diagnostic dump if no dispatchable work remains
/// while gates are still pending (unreachable for connected layouts).
PipelineSchedule execute_pipeline(const LogicalCircuit& circuit, const LayoutGrid& grid0,
                                  const CostConfig& config, const RotationContext& ctx);

} // namespace lscomp

#endif
