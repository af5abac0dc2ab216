// lscomp CLI: `lscomp compile ...` turns a logical benchmark circuit into
// validated cycle-accurate schedules under the selected layout, rotation
// regime and executor modes, and writes report/trace artifacts.
//
// Exit codes: 0 success, 1 configuration error, 2 validation failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "lscomp/experiment.hpp"

namespace {

using lscomp::Cycles;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Cycles cost_field(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) return Cycles::parse(v.get<std::string>());
    if (v.is_number_integer()) return Cycles{v.get<std::int64_t>()};
    throw CLI::ValidationError("cost-config: '" + key +
                               "' must be an integer or an exact decimal string");
}

void apply_cost_config(lscomp::CostConfig& cost, const std::string& path) {
    nlohmann::json j = nlohmann::json::parse(slurp(path));
    for (auto& [key, value] : j.items()) {
        if (key == "t_zz") cost.t_zz = cost_field(value, key);
        else if (key == "t_rot_patch") cost.t_rot_patch = cost_field(value, key);
        else if (key == "t_xx") cost.t_xx = cost_field(value, key);
        else if (key == "t_h") cost.t_h = cost_field(value, key);
        else if (key == "t_s") cost.t_s = cost_field(value, key);
        else if (key == "t_rz_inject") cost.t_rz_inject = cost_field(value, key);
        else if (key == "t_cult") cost.t_cult = cost_field(value, key);
        else if (key == "c_reset") cost.c_reset = cost_field(value, key);
        else if (key == "c_flow_per_turn") cost.c_flow_per_turn = cost_field(value, key);
        else if (key == "ms_top_k") cost.ms_top_k = value.get<int>();
        else if (key == "rotation_mode") {
            std::string mode = value.get<std::string>();
            if (mode == "simultaneous") cost.rotation_mode = lscomp::RotationMode::SIMULTANEOUS;
            else if (mode == "per_segment") cost.rotation_mode = lscomp::RotationMode::PER_SEGMENT;
            else throw CLI::ValidationError("cost-config: unknown rotation_mode '" + mode + "'");
        } else {
            throw CLI::ValidationError("cost-config: unknown key '" + key + "'");
        }
    }
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice-surgery compilation toolkit"};
    app.require_subcommand(1);

    CLI::App* compile = app.add_subcommand("compile", "compile a benchmark into schedules");
    std::string benchmark = "qaoa";
    compile->add_option("--benchmark", benchmark, "qaoa | qft | file")
        ->check(CLI::IsMember({"qaoa", "qft", "file"}));
    int qubits = 8;
    compile->add_option("--qubits", qubits, "logical qubit count")->check(CLI::PositiveNumber);
    double edge_prob = 0.5;
    compile->add_option("--edge-prob", edge_prob, "QAOA Erdos-Renyi edge probability")
        ->check(CLI::Range(0.0, 1.0));
    std::string layout = "sparse";
    compile->add_option("--layout", layout, "compact | half | twothirds | sparse")
        ->check(CLI::IsMember({"compact", "half", "twothirds", "sparse"}));
    std::string ms_density = "starved";
    compile->add_option("--ms-density", ms_density, "abundant | starved")
        ->check(CLI::IsMember({"abundant", "starved"}));
    std::string regime = "eft";
    compile->add_option("--regime", regime, "eft | fft-msd | fft-msc")
        ->check(CLI::IsMember({"eft", "fft-msd", "fft-msc"}));
    int precision = 6;
    compile->add_option("--precision", precision, "synthesis precision (~ -log10 error)")
        ->check(CLI::PositiveNumber);
    std::string modes = "greedy,slice,pipelined";
    compile->add_option("--mode", modes, "comma list of greedy,slice,pipelined");
    std::string seeds = "1";
    compile->add_option("--seed", seeds, "comma list of benchmark seeds");
    std::string out_dir;
    compile->add_option("--out", out_dir, "output directory for report and traces");
    bool verify = false;
    compile->add_flag("--verify", verify, "oracle-check schedules (<= 8 qubits)");
    bool dump_groups = false;
    compile->add_flag("--dump-groups", dump_groups, "write packed group plans as JSON");
    std::string cost_config, circuit_file, rz_file, layout_file;
    compile->add_option("--cost-config", cost_config, "JSON cost-constant overrides")
        ->check(CLI::ExistingFile);
    compile->add_option("--circuit-file", circuit_file, "circuit text (benchmark=file)")
        ->check(CLI::ExistingFile);
    compile->add_option("--rz-file", rz_file, "rotation synthesis table (angle eps seq)")
        ->check(CLI::ExistingFile);
    compile->add_option("--layout-file", layout_file, "layout JSON overriding --layout")
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    lscomp::RzTable table;
    try {
        lscomp::ExperimentConfig cfg;
        cfg.benchmark = benchmark;
        cfg.qubits = qubits;
        cfg.edge_prob = edge_prob;
        cfg.layout = layout == "compact"     ? lscomp::LayoutKind::COMPACT
                     : layout == "half"      ? lscomp::LayoutKind::HALF_FILLING
                     : layout == "twothirds" ? lscomp::LayoutKind::TWO_THIRDS_FILLING
                                             : lscomp::LayoutKind::SQUARE_SPARSE;
        cfg.ms_density = ms_density == "abundant" ? lscomp::MsDensity::ABUNDANT
                                                  : lscomp::MsDensity::STARVED;
        cfg.rotation.regime = *lscomp::regime_from_string(regime);
        cfg.rotation.epsilon = precision;
        if (!rz_file.empty()) {
            table = lscomp::RzTable::load(rz_file);
            cfg.rotation.provider = lscomp::RzProvider::FILE;
            cfg.rotation.table = &table;
        }
        if (!cost_config.empty()) apply_cost_config(cfg.cost, cost_config);
        cfg.modes = split_list(modes);
        if (cfg.modes.empty()) throw CLI::ValidationError("--mode: empty mode list");
        for (const std::string& m : cfg.modes)
            if (m != "greedy" && m != "slice" && m != "pipelined")
                throw CLI::ValidationError("--mode: unknown mode '" + m + "'");
        cfg.seeds.clear();
        for (const std::string& s : split_list(seeds)) cfg.seeds.push_back(std::stoull(s));
        if (cfg.seeds.empty()) throw CLI::ValidationError("--seed: empty seed list");
        if (benchmark == "file") {
            if (circuit_file.empty())
                throw CLI::ValidationError("--benchmark file requires --circuit-file");
            cfg.file_circuit = lscomp::load_circuit_file(circuit_file);
            cfg.qubits = cfg.file_circuit->num_qubits;
        }
        if (!layout_file.empty())
            cfg.layout_override = lscomp::layout_from_json(slurp(layout_file));
        cfg.out_dir = out_dir;
        cfg.verify = verify;
        cfg.dump_groups = dump_groups;

        auto t0 = std::chrono::steady_clock::now();
        lscomp::ExperimentResult result = lscomp::run_experiment(cfg);
        auto t1 = std::chrono::steady_clock::now();

        lscomp::write_experiment_outputs(cfg, result);
        std::cout << lscomp::experiment_report_json(cfg, result);
        std::cerr << "# wall-clock: "
                  << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                  << " ms\n";
        if (!result.ok) {
            std::cerr << "schedule validation or verification failed (see report)\n";
            return 2;
        }
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
