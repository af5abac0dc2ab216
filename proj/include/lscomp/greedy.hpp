// greedy.hpp
//
// Round-based greedy baseline.  Every controlled-phase gate is broken into
// its CNOT / Rz / CNOT primitives and scheduled one round at a time: each
// round starts from a clean occupancy overlay (orientations persist), ranks
// the startable primitives by a most-constrained-first key, and commits
// routes greedily until nothing else fits.  Rounds are separated by a grid
// reset, so the total latency is the sum of per-round maxima plus resets --
// the sequential baseline the fan-out executors are measured against.

#ifndef LSCOMP_GREEDY_HPP
#define LSCOMP_GREEDY_HPP

#include <string>
#include <vector>

#include "lscomp/circuit.hpp"
#include "lscomp/cost_model.hpp"
#include "lscomp/layout.hpp"
#include "lscomp/rotation.hpp"
#include "lscomp/schedule.hpp"

namespace lscomp {

struct GreedyRound {
    int index = 0;
    std::vector<std::string> ops;  // committed op ids, commit order
    Cycles latency;                // longest committed primitive
};

struct GreedySchedule {
    EventSchedule events;
    std::vector<GreedyRound> rounds;
};

/// Runs the whole circuit on a private copy of `grid0`.  Throws
/// std::runtime_error when a round places nothing while work remains (the
/// layout cannot route some primitive even on an empty grid).
GreedySchedule execute_greedy(const LogicalCircuit& circuit, const LayoutGrid& grid0,
                              const CostConfig& config, const RotationContext& ctx);

} // namespace lscomp

#endif
