#include "lscomp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lscomp {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
using Amp = std::complex<double>;
} // namespace

Unitary Unitary::identity(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 8)
        throw std::invalid_argument("oracle: unitary limited to 1..8 qubits");
    Unitary u;
    u.n_qubits = n_qubits;
    int d = 1 << n_qubits;
    u.m.assign(std::size_t(d) * d, Amp{0, 0});
    for (int i = 0; i < d; ++i) u.at(i, i) = Amp{1, 0};
    return u;
}

void Unitary::apply_h(int q) {
    int d = dim(), bit = 1 << q;
    for (int r = 0; r < d; ++r) {
        if (r & bit) continue;
        int r1 = r | bit;
        for (int c = 0; c < d; ++c) {
            Amp a = at(r, c), b = at(r1, c);
            at(r, c) = (a + b) * kInvSqrt2;
            at(r1, c) = (a - b) * kInvSqrt2;
        }
    }
}

void Unitary::apply_rz(int q, double angle) {
    int d = dim(), bit = 1 << q;
    Amp lo = std::polar(1.0, -angle / 2), hi = std::polar(1.0, angle / 2);
    for (int r = 0; r < d; ++r) {
        Amp ph = (r & bit) ? hi : lo;
        for (int c = 0; c < d; ++c) at(r, c) *= ph;
    }
}

void Unitary::apply_cnot(int control, int target) {
    int d = dim(), cbit = 1 << control, tbit = 1 << target;
    for (int r = 0; r < d; ++r) {
        if (!(r & cbit) || (r & tbit)) continue;
        int r1 = r | tbit;
        for (int c = 0; c < d; ++c) std::swap(at(r, c), at(r1, c));
    }
}

void Unitary::apply_cphase(int q1, int q2, double angle) {
    int d = dim(), b1 = 1 << q1, b2 = 1 << q2;
    Amp ph = std::polar(1.0, angle);
    for (int r = 0; r < d; ++r)
        if ((r & b1) && (r & b2))
            for (int c = 0; c < d; ++c) at(r, c) *= ph;
}

void Unitary::apply_gate(const Gate& g) {
    switch (g.kind) {
        case GateKind::CPHASE: apply_cphase(g.q1, g.q2, g.angle); break;
        case GateKind::H: apply_h(g.q1); break;
        case GateKind::RZ: apply_rz(g.q1, g.angle); break;
    }
}

void Unitary::apply_semantic(const SemanticOp& op) {
    switch (op.kind) {
        case SemanticOp::Kind::CNOT: apply_cnot(op.q1, op.q2); break;
        case SemanticOp::Kind::RZ: apply_rz(op.q1, op.angle); break;
        case SemanticOp::Kind::H: apply_h(op.q1); break;
    }
}

double Unitary::unitarity_deviation() const {
    int d = dim();
    double worst = 0.0;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            Amp dot{0, 0};
            for (int k = 0; k < d; ++k) dot += at(r, k) * std::conj(at(c, k));
            if (r == c) dot -= Amp{1, 0};
            worst = std::max(worst, std::abs(dot));
        }
    return worst;
}

Unitary circuit_unitary(const LogicalCircuit& circuit) {
    Unitary u = Unitary::identity(circuit.num_qubits);
    for (const Gate& g : circuit.gates) u.apply_gate(g);
    return u;
}

Unitary schedule_unitary(const EventSchedule& schedule, int n_qubits) {
    std::vector<const Interval*> rows;
    for (const Interval& iv : schedule.intervals)
        if (!iv.ops.empty()) rows.push_back(&iv);
    std::sort(rows.begin(), rows.end(), [](const Interval* a, const Interval* b) {
        if (a->start != b->start) return a->start < b->start;
        if (a->op_id != b->op_id) return a->op_id < b->op_id;
        return (int)a->stage < (int)b->stage;
    });
    Unitary u = Unitary::identity(n_qubits);
    for (const Interval* iv : rows)
        for (const SemanticOp& op : iv->ops) u.apply_semantic(op);
    return u;
}

double deviation_up_to_phase(const Unitary& a, const Unitary& b) {
    if (a.n_qubits != b.n_qubits)
        throw std::invalid_argument("deviation_up_to_phase: dimension mismatch");
    int d = a.dim();
    // Normalize b's global phase against the first non-negligible entry of a.
    Amp phase{1, 0};
    for (std::size_t i = 0; i < a.m.size(); ++i) {
        if (std::abs(a.m[i]) > 1e-9) {
            if (std::abs(b.m[i]) < 1e-12) return 2.0;  // structurally different
            phase = (a.m[i] / std::abs(a.m[i])) * std::conj(b.m[i] / std::abs(b.m[i]));
            break;
        }
    }
    double worst = 0.0;
    for (int i = 0; i < d * d; ++i) worst = std::max(worst, std::abs(a.m[i] - b.m[i] * phase));
    return worst;
}

bool check_commute(const Gate& a, const Gate& b, double tol) {
    int n = std::max({a.q1, a.q2, b.q1, b.q2}) + 1;
    if (n > 8) throw std::invalid_argument("check_commute: support too wide");
    Unitary ab = Unitary::identity(n);
    ab.apply_gate(a);
    ab.apply_gate(b);
    Unitary ba = Unitary::identity(n);
    ba.apply_gate(b);
    ba.apply_gate(a);
    double worst = 0.0;
    for (std::size_t i = 0; i < ab.m.size(); ++i)
        worst = std::max(worst, std::abs(ab.m[i] - ba.m[i]));
    return worst < tol;
}

bool commuting_layers_valid(const LogicalCircuit& circuit) {
    for (const auto& layer : circuit.commuting_layers)
        for (std::size_t i = 0; i < layer.size(); ++i)
            for (std::size_t j = i + 1; j < layer.size(); ++j)
                if (!check_commute(circuit.gates[layer[i]], circuit.gates[layer[j]]))
                    return false;
    return true;
}

VerificationResult verify_semantics(const LogicalCircuit& circuit,
                                    const EventSchedule& schedule, double tol) {
    Unitary want = circuit_unitary(circuit);
    Unitary got = schedule_unitary(schedule, circuit.num_qubits);
    VerificationResult r;
    r.max_deviation = deviation_up_to_phase(want, got);
    r.ok = r.max_deviation < tol;
    return r;
}

} // namespace lscomp
