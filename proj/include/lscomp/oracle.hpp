// oracle.hpp
//
// Dense-unitary semantics oracle for small circuits (<= 8 qubits): builds
// the exact unitary of a logical circuit, replays an executed schedule's
// semantic operations in time order, and compares the two up to global
// phase.  Synthesized rotation sequences are folded back to their exact Rz
// angles, so the comparison checks scheduling semantics, not synthesis
// accuracy.

#ifndef LSCOMP_ORACLE_HPP
#define LSCOMP_ORACLE_HPP

#include <complex>
#include <vector>

#include "lscomp/circuit.hpp"
#include "lscomp/schedule.hpp"

namespace lscomp {

struct Unitary {
    int n_qubits = 0;
    std::vector<std::complex<double>> m;  // row-major 2^n x 2^n

    static Unitary identity(int n_qubits);
    int dim() const { return 1 << n_qubits; }
    std::complex<double>& at(int r, int c) { return m[std::size_t(r) * dim() + c]; }
    const std::complex<double>& at(int r, int c) const { return m[std::size_t(r) * dim() + c]; }

    // Left-multiplication by elementary gates (qubit q <-> bit q of the
    // basis index).
    void apply_h(int q);
    void apply_rz(int q, double angle);  // diag(e^{-ia/2}, e^{+ia/2})
    void apply_cnot(int control, int target);
    void apply_cphase(int q1, int q2, double angle);  // diag(1,1,1,e^{ia})

    void apply_gate(const Gate& g);
    void apply_semantic(const SemanticOp& op);

    /// max |U U^dagger - I| entry; ~0 for any valid circuit.
    double unitarity_deviation() const;
};

/// Exact unitary of the circuit's gates in program order.  Throws for
/// circuits wider than 8 qubits.
Unitary circuit_unitary(const LogicalCircuit& circuit);

/// Replay a schedule's semantic ops sorted by (start, op_id, stage).
/// Concurrent intervals of a valid schedule commute, so this order is
/// semantically unambiguous.
Unitary schedule_unitary(const EventSchedule& schedule, int n_qubits);

/// Max entry-wise |A - B| after normalizing B's global phase against the
/// first non-negligible entry of A.
double deviation_up_to_phase(const Unitary& a, const Unitary& b);

/// Commutator check on the joint support of two gates.
bool check_commute(const Gate& a, const Gate& b, double tol = 1e-9);

/// True when every commuting layer's members pairwise commute.
bool commuting_layers_valid(const LogicalCircuit& circuit);

struct VerificationResult {
    bool ok = false;
    double max_deviation = 0.0;
};

/// End-to-end semantics check of one executed schedule against its source.
VerificationResult verify_semantics(const LogicalCircuit& circuit,
                                    const EventSchedule& schedule, double tol = 1e-9);

} // namespace lscomp

#endif
