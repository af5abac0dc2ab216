// experiment.hpp
//
// Benchmark harness shared by the CLI and the test suite: builds a circuit
// (QAOA / QFT / file) and a layout, runs the requested executors over a seed
// list, validates every schedule structurally, optionally verifies small
// schedules against the dense-unitary oracle, and aggregates speedups into a
// deterministic JSON report plus per-run trace CSVs.

#ifndef LSCOMP_EXPERIMENT_HPP
#define LSCOMP_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lscomp/circuit.hpp"
#include "lscomp/cost_model.hpp"
#include "lscomp/layout.hpp"
#include "lscomp/oracle.hpp"
#include "lscomp/rotation.hpp"
#include "lscomp/schedule.hpp"

namespace lscomp {

struct ExperimentConfig {
    std::string benchmark = "qaoa";  // qaoa | qft | file
    int qubits = 8;
    double edge_prob = 0.5;  // QAOA Erdos-Renyi edge probability
    LayoutKind layout = LayoutKind::SQUARE_SPARSE;
    MsDensity ms_density = MsDensity::STARVED;
    RotationContext rotation;
    CostConfig cost;
    std::vector<std::string> modes = {"greedy", "slice", "pipelined"};
    std::vector<std::uint64_t> seeds = {1};
    std::string out_dir;  // empty: nothing written to disk
    bool verify = false;
    bool dump_groups = false;
    std::optional<LogicalCircuit> file_circuit;  // benchmark == "file"
    std::optional<LayoutGrid> layout_override;   // --layout-file
};

/// One executor run: its schedule, headline numbers, validation findings and
/// (when requested and small enough) the oracle verdict.
struct ModeOutcome {
    std::string mode;
    EventSchedule events;
    Cycles total;
    Cycles stage_b;  // summed per-rotation stage-B busy time
    int units = 0;   // rounds (greedy) / slices (slice) / groups (pipelined)
    std::vector<std::string> violations;
    std::optional<VerificationResult> verification;
    std::string groups_json;  // slice-mode packed plans, --dump-groups only
};

struct SeedOutcome {
    std::uint64_t seed = 0;
    int gates = 0;
    int cp_gates = 0;
    std::vector<ModeOutcome> modes;
    std::map<std::string, double> speedups;  // greedy cycles / mode cycles
};

struct ExperimentResult {
    std::vector<SeedOutcome> seeds;
    std::map<std::string, double> geomean_speedup;
    bool ok = true;  // no violations, no failed verification
};

/// One executor on one prepared circuit/grid.  `mode` is "greedy", "slice"
/// or "pipelined"; anything else throws std::invalid_argument.
ModeOutcome run_mode(const std::string& mode, const LogicalCircuit& circuit,
                     const LayoutGrid& grid, const CostConfig& config,
                     const RotationContext& ctx, bool verify, bool dump_groups = false);

/// The benchmark circuit an (config, seed) pair denotes.
LogicalCircuit build_benchmark(const ExperimentConfig& cfg, std::uint64_t seed);

/// The layout grid the config denotes.
LayoutGrid build_experiment_grid(const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// schema_version 1 report; exact cycle counts as decimal strings, rounded
/// integers alongside, speedups as doubles.
std::string experiment_report_json(const ExperimentConfig& cfg, const ExperimentResult& result);

/// Writes report.json, layout.json, per-run trace_<mode>_s<seed>.csv and
/// (with dump_groups) groups_s<seed>.json into cfg.out_dir.
void write_experiment_outputs(const ExperimentConfig& cfg, const ExperimentResult& result);

} // namespace lscomp

#endif
