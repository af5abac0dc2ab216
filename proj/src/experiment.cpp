#include "lscomp/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "lscomp/exec_pipeline.hpp"
#include "lscomp/exec_slice.hpp"
#include "lscomp/greedy.hpp"
#include "lscomp/grouping.hpp"

namespace lscomp {

namespace {

using ordered_json = nlohmann::ordered_json;

Cycles stage_b_busy(const EventSchedule& events) {
    Cycles sum{0};
    for (const Interval& iv : events.intervals)
        if (iv.stage == Stage::B && !iv.qubits.empty()) sum += iv.end - iv.start;
    return sum;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

} // namespace

ModeOutcome run_mode(const std::string& mode, const LogicalCircuit& circuit,
                     const LayoutGrid& grid, const CostConfig& config,
                     const RotationContext& ctx, bool verify, bool dump_groups) {
    ModeOutcome out;
    out.mode = mode;
    if (mode == "greedy") {
        GreedySchedule s = execute_greedy(circuit, grid, config, ctx);
        out.events = std::move(s.events);
        out.units = (int)s.rounds.size();
    } else if (mode == "slice") {
        SliceSchedule s = execute_slices(circuit, grid, config, ctx);
        out.events = std::move(s.events);
        out.units = (int)s.slices.size();
        if (dump_groups) {
            ordered_json plans = ordered_json::array();
            for (const GroupPlan& plan : s.plans)
                plans.push_back(ordered_json::parse(group_plan_to_json(plan)));
            out.groups_json = plans.dump(2) + "\n";
        }
    } else if (mode == "pipelined") {
        PipelineSchedule s = execute_pipeline(circuit, grid, config, ctx);
        out.events = std::move(s.events);
        out.units = s.groups_formed;
    } else {
        throw std::invalid_argument("run_mode: unknown mode '" + mode + "'");
    }
    out.total = out.events.makespan;
    out.stage_b = stage_b_busy(out.events);
    out.violations = check_schedule(out.events, grid, circuit);
    if (verify && circuit.num_qubits <= 8)
        out.verification = verify_semantics(circuit, out.events);
    return out;
}

LogicalCircuit build_benchmark(const ExperimentConfig& cfg, std::uint64_t seed) {
    if (cfg.benchmark == "qaoa") return gen_qaoa(cfg.qubits, cfg.edge_prob, seed);
    if (cfg.benchmark == "qft") return gen_qft(cfg.qubits);
    if (cfg.benchmark == "file") {
        if (!cfg.file_circuit) throw std::invalid_argument("file benchmark without a circuit");
        return *cfg.file_circuit;
    }
    throw std::invalid_argument("unknown benchmark '" + cfg.benchmark + "'");
}

LayoutGrid build_experiment_grid(const ExperimentConfig& cfg) {
    if (cfg.layout_override) return *cfg.layout_override;
    int n = cfg.benchmark == "file" && cfg.file_circuit ? cfg.file_circuit->num_qubits
                                                        : cfg.qubits;
    return build_layout(cfg.layout, n, cfg.ms_density);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.cost.validate();
    ExperimentResult result;
    LayoutGrid grid = build_experiment_grid(cfg);

    std::map<std::string, std::vector<double>> speedup_samples;
    for (std::uint64_t seed : cfg.seeds) {
        SeedOutcome so;
        so.seed = seed;
        LogicalCircuit circuit = build_benchmark(cfg, seed);
        so.gates = (int)circuit.gates.size();
        for (const Gate& g : circuit.gates)
            if (g.kind == GateKind::CPHASE) ++so.cp_gates;

        std::optional<Cycles> greedy_total;
        for (const std::string& mode : cfg.modes) {
            ModeOutcome mo =
                run_mode(mode, circuit, grid, cfg.cost, cfg.rotation, cfg.verify, cfg.dump_groups);
            if (!mo.violations.empty()) result.ok = false;
            if (mo.verification && !mo.verification->ok) result.ok = false;
            if (mode == "greedy") greedy_total = mo.total;
            so.modes.push_back(std::move(mo));
        }
        if (greedy_total)
            for (const ModeOutcome& mo : so.modes)
                if (!mo.total.is_zero()) {
                    double ratio = greedy_total->to_double() / mo.total.to_double();
                    so.speedups[mo.mode] = ratio;
                    speedup_samples[mo.mode].push_back(ratio);
                }
        result.seeds.push_back(std::move(so));
    }

    for (const auto& [mode, samples] : speedup_samples) {
        double log_sum = 0.0;
        for (double s : samples) log_sum += std::log(s);
        result.geomean_speedup[mode] = std::exp(log_sum / (double)samples.size());
    }
    return result;
}

std::string experiment_report_json(const ExperimentConfig& cfg, const ExperimentResult& result) {
    ordered_json root;
    root["schema_version"] = 1;
    root["benchmark"] = cfg.benchmark;
    root["qubits"] = cfg.qubits;
    if (cfg.benchmark == "qaoa") root["edge_prob"] = cfg.edge_prob;
    root["layout"] = to_string(cfg.layout);
    root["ms_density"] = to_string(cfg.ms_density);
    root["regime"] = to_string(cfg.rotation.regime);
    root["epsilon"] = cfg.rotation.epsilon;
    root["rz_provider"] = cfg.rotation.provider == RzProvider::MODEL ? "model" : "file";
    ordered_json cost;
    cost["t_zz"] = cfg.cost.t_zz.str();
    cost["t_rot_patch"] = cfg.cost.t_rot_patch.str();
    cost["t_xx"] = cfg.cost.t_xx.str();
    cost["t_h"] = cfg.cost.t_h.str();
    cost["t_s"] = cfg.cost.t_s.str();
    cost["t_rz_inject"] = cfg.cost.t_rz_inject.str();
    cost["t_cult"] = cfg.cost.t_cult.str();
    cost["c_reset"] = cfg.cost.c_reset.str();
    cost["c_flow_per_turn"] = cfg.cost.c_flow_per_turn.str();
    cost["rotation_mode"] =
        cfg.cost.rotation_mode == RotationMode::SIMULTANEOUS ? "simultaneous" : "per_segment";
    cost["ms_top_k"] = cfg.cost.ms_top_k;
    root["cost"] = cost;
    root["modes"] = cfg.modes;

    ordered_json seeds = ordered_json::array();
    for (const SeedOutcome& so : result.seeds) {
        ordered_json js;
        js["seed"] = so.seed;
        js["gates"] = so.gates;
        js["cp_gates"] = so.cp_gates;
        ordered_json modes;
        for (const ModeOutcome& mo : so.modes) {
            ordered_json jm;
            jm["cycles"] = mo.total.str();
            jm["cycles_ceil"] = mo.total.ceil_int();
            jm["stage_b_cycles"] = mo.stage_b.str();
            const char* unit = mo.mode == "greedy"  ? "rounds"
                               : mo.mode == "slice" ? "slices"
                                                    : "groups";
            jm[unit] = mo.units;
            jm["violations"] = (int)mo.violations.size();
            if (!mo.violations.empty()) {
                ordered_json sample = ordered_json::array();
                for (std::size_t i = 0; i < mo.violations.size() && i < 5; ++i)
                    sample.push_back(mo.violations[i]);
                jm["violation_sample"] = sample;
            }
            if (mo.verification) {
                jm["verified"] = mo.verification->ok;
                jm["max_deviation"] = mo.verification->max_deviation;
            }
            modes[mo.mode] = jm;
        }
        js["modes"] = modes;
        if (!so.speedups.empty()) {
            ordered_json sp;
            for (const auto& [mode, value] : so.speedups) sp[mode] = value;
            js["speedups"] = sp;
        }
        seeds.push_back(js);
    }
    root["seeds"] = seeds;
    if (!result.geomean_speedup.empty()) {
        ordered_json sp;
        for (const auto& [mode, value] : result.geomean_speedup) sp[mode] = value;
        root["geomean_speedup"] = sp;
    }
    root["ok"] = result.ok;
    return root.dump(2) + "\n";
}

void write_experiment_outputs(const ExperimentConfig& cfg, const ExperimentResult& result) {
    if (cfg.out_dir.empty()) return;
    std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "report.json", experiment_report_json(cfg, result));
    write_file(dir / "layout.json", layout_to_json(build_experiment_grid(cfg)));
    for (const SeedOutcome& so : result.seeds)
        for (const ModeOutcome& mo : so.modes) {
            std::string name = "trace_" + mo.mode + "_s" + std::to_string(so.seed) + ".csv";
            write_file(dir / name, schedule_to_csv(mo.events));
            if (!mo.groups_json.empty())
                write_file(dir / ("groups_s" + std::to_string(so.seed) + ".json"), mo.groups_json);
        }
}

} // namespace lscomp
