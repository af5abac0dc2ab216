#include "lscomp/circuit.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lscomp {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_angle(double a) {
    if (!std::isfinite(a) || a <= -2 * kPi || a > 2 * kPi + 1e-12)
        throw std::invalid_argument("gate angle must be finite and in (-2*pi, 2*pi]");
}

/// Exact commutation for this gate alphabet: diagonal gates (CPHASE, RZ)
/// always commute; H commutes with anything not sharing a qubit.
bool gates_commute(const Gate& a, const Gate& b) {
    bool a_diag = a.kind != GateKind::H;
    bool b_diag = b.kind != GateKind::H;
    if (a_diag && b_diag) return true;
    for (int q : {a.q1, a.q2})
        if (q >= 0 && b.touches(q)) return false;
    return true;
}

} // namespace

void LogicalCircuit::validate() const {
    if (num_qubits < 1) throw std::invalid_argument("circuit: need at least one qubit");
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        if (g.id != (int)i) throw std::invalid_argument("circuit: gate id != index");
        if (g.q1 < 0 || g.q1 >= num_qubits)
            throw std::invalid_argument("circuit: q1 out of range");
        if (g.kind == GateKind::CPHASE) {
            if (g.q2 < 0 || g.q2 >= num_qubits || g.q2 == g.q1)
                throw std::invalid_argument("circuit: CPHASE needs two distinct qubits");
        } else if (g.q2 != -1) {
            throw std::invalid_argument("circuit: single-qubit gate with q2 set");
        }
        check_angle(g.angle);
    }
    if (layer_of.size() != gates.size())
        throw std::invalid_argument("circuit: layers not assigned");
}

void assign_commuting_layers(LogicalCircuit& circuit) {
    circuit.commuting_layers.clear();
    circuit.layer_of.assign(circuit.gates.size(), -1);
    for (const Gate& g : circuit.gates) {
        bool joins = false;
        if (!circuit.commuting_layers.empty()) {
            joins = true;
            for (int id : circuit.commuting_layers.back())
                if (!gates_commute(circuit.gates[id], g)) {
                    joins = false;
                    break;
                }
        }
        if (!joins) circuit.commuting_layers.push_back({});
        circuit.commuting_layers.back().push_back(g.id);
        circuit.layer_of[g.id] = (int)circuit.commuting_layers.size() - 1;
    }
}

CphaseDecomposition decompose_cphase(const Gate& gate) {
    if (gate.kind != GateKind::CPHASE)
        throw std::invalid_argument("decompose_cphase: gate is not a CPHASE");
    CphaseDecomposition d;
    d.control = gate.q1;
    d.target = gate.q2;
    d.rz_angle = -gate.angle / 2.0;
    d.local_phase = gate.angle / 2.0;
    return d;
}

std::uint64_t SplitMix64::next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() { return double(next() >> 11) * 0x1.0p-53; }

LogicalCircuit gen_qaoa(int n_qubits, double edge_prob, std::uint64_t seed) {
    if (n_qubits < 2) throw std::invalid_argument("gen_qaoa: need at least two qubits");
    if (edge_prob < 0.0 || edge_prob > 1.0)
        throw std::invalid_argument("gen_qaoa: edge probability outside [0,1]");
    LogicalCircuit c;
    c.num_qubits = n_qubits;
    SplitMix64 rng(seed);
    int id = 0;
    for (int i = 0; i < n_qubits - 1; ++i)
        for (int j = i + 1; j < n_qubits; ++j)
            if (rng.next_unit() < edge_prob)
                c.gates.push_back({id++, GateKind::CPHASE, i, j, 0.0});
    double gamma = rng.next_unit() * 2 * kPi;
    double beta = rng.next_unit() * kPi;
    for (Gate& g : c.gates) g.angle = gamma;
    // Mixer exp(-i*beta*X) = H * Rz(2*beta) * H per qubit, in place.
    for (int q = 0; q < n_qubits; ++q) c.gates.push_back({id++, GateKind::H, q, -1, 0.0});
    for (int q = 0; q < n_qubits; ++q)
        c.gates.push_back({id++, GateKind::RZ, q, -1, 2 * beta});
    for (int q = 0; q < n_qubits; ++q) c.gates.push_back({id++, GateKind::H, q, -1, 0.0});
    assign_commuting_layers(c);
    c.validate();
    return c;
}

LogicalCircuit gen_qft(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("gen_qft: need at least one qubit");
    LogicalCircuit c;
    c.num_qubits = n_qubits;
    int id = 0;
    for (int i = 0; i < n_qubits; ++i) {
        c.gates.push_back({id++, GateKind::H, i, -1, 0.0});
        for (int j = i + 1; j < n_qubits; ++j)
            c.gates.push_back({id++, GateKind::CPHASE, i, j, kPi / double(1LL << (j - i))});
    }
    assign_commuting_layers(c);
    c.validate();
    return c;
}

LogicalCircuit parse_circuit(const std::string& text) {
    LogicalCircuit c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    int id = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("circuit line " + std::to_string(lineno) + ": " + why);
        };
        if (!have_header) {
            if (tok != "qubits") fail("expected 'qubits N' header");
            if (!(ls >> c.num_qubits) || c.num_qubits < 1) fail("bad qubit count");
            have_header = true;
            continue;
        }
        if (tok == "CP") {
            int a, b;
            double th;
            if (!(ls >> a >> b >> th)) fail("expected 'CP c t theta'");
            c.gates.push_back({id++, GateKind::CPHASE, a, b, th});
        } else if (tok == "H") {
            int q;
            if (!(ls >> q)) fail("expected 'H q'");
            c.gates.push_back({id++, GateKind::H, q, -1, 0.0});
        } else if (tok == "RZ") {
            int q;
            double th;
            if (!(ls >> q >> th)) fail("expected 'RZ q theta'");
            c.gates.push_back({id++, GateKind::RZ, q, -1, th});
        } else {
            fail("unknown op '" + tok + "'");
        }
    }
    if (!have_header) throw std::invalid_argument("circuit: missing 'qubits N' header");
    assign_commuting_layers(c);
    c.validate();
    return c;
}

std::string format_circuit(const LogicalCircuit& circuit) {
    std::ostringstream out;
    out.precision(17);
    out << "qubits " << circuit.num_qubits << "\n";
    for (const Gate& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::CPHASE:
                out << "CP " << g.q1 << " " << g.q2 << " " << g.angle << "\n";
                break;
            case GateKind::H:
                out << "H " << g.q1 << "\n";
                break;
            case GateKind::RZ:
                out << "RZ " << g.q1 << " " << g.angle << "\n";
                break;
        }
    }
    return out.str();
}

LogicalCircuit load_circuit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open circuit file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_circuit(buf.str());
}

RzTable RzTable::parse(const std::string& text) {
    RzTable t;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        double angle;
        int eps;
        std::string seq;
        std::string first;
        if (!(ls >> first) || first[0] == '#') continue;
        std::istringstream reparse(line);
        if (!(reparse >> angle >> eps >> seq))
            throw std::invalid_argument("rz table line " + std::to_string(lineno) +
                                        ": expected 'angle epsilon SEQUENCE'");
        for (char ch : seq)
            if (ch != 'H' && ch != 'S' && ch != 'T')
                throw std::invalid_argument("rz table line " + std::to_string(lineno) +
                                            ": sequence alphabet is {H,S,T}");
        std::int64_t key = (std::int64_t)std::llround(angle * 1e12);
        t.entries_[{key, eps}] = seq;
    }
    return t;
}

RzTable RzTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rz table file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const std::string* RzTable::find(double angle, int epsilon) const {
    std::int64_t key = (std::int64_t)std::llround(angle * 1e12);
    auto it = entries_.find({key, epsilon});
    return it == entries_.end() ? nullptr : &it->second;
}

namespace {

RzDecomposition counts_of(const std::string& seq) {
    RzDecomposition d;
    d.sequence = seq;
    for (char ch : seq) {
        if (ch == 'T') ++d.n_t;
        else if (ch == 'S') ++d.n_s;
        else ++d.n_h;
    }
    return d;
}

} // namespace

RzDecomposition synthesize_rz(double angle, int epsilon, RzProvider provider,
                              const RzTable* table) {
    if (!std::isfinite(angle)) throw std::invalid_argument("synthesize_rz: bad angle");
    if (epsilon < 1) throw std::invalid_argument("synthesize_rz: epsilon must be >= 1");
    if (std::abs(angle) < 1e-15) return {};  // identity rotation
    if (std::abs(angle - kPi / 4) < 1e-12) return counts_of("T");
    if (provider == RzProvider::FILE) {
        if (!table) throw std::invalid_argument("synthesize_rz: FILE provider needs a table");
        const std::string* seq = table->find(angle, epsilon);
        if (!seq)
            throw std::invalid_argument("synthesize_rz: no table entry for angle " +
                                        std::to_string(angle) + " at epsilon " +
                                        std::to_string(epsilon));
        return counts_of(*seq);
    }
    // Model counts: T depth grows linearly in the decimal precision; S and H
    // interleave one-per-T with a leading pair.
    int n_t = (int)std::llround(3.0 * epsilon * std::log2(10.0)) + 4;
    std::string seq = "HS";
    for (int i = 0; i < n_t; ++i) seq += "TSH";
    return counts_of(seq);
}

} // namespace lscomp
