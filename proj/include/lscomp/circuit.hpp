// circuit.hpp
//
// Logical circuit IR: CPHASE / H / RZ gates, commuting-layer structure,
// benchmark generators (QAOA Max-Cut, QFT), the CPHASE -> CNOT-Rz-CNOT
// decomposition, and Rz-to-{H,S,T} synthesis providers.

#ifndef LSCOMP_CIRCUIT_HPP
#define LSCOMP_CIRCUIT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lscomp {

enum class GateKind : std::uint8_t { CPHASE, H, RZ };

struct Gate {
    int id = -1;
    GateKind kind = GateKind::CPHASE;
    int q1 = -1;          // CPHASE control-side endpoint; the qubit for H/RZ
    int q2 = -1;          // CPHASE target-side endpoint, -1 otherwise
    double angle = 0.0;   // finite, in (-2*pi, 2*pi]

    bool touches(int q) const { return q == q1 || q == q2; }
    int other(int q) const { return q == q1 ? q2 : q1; }
};

struct LogicalCircuit {
    int num_qubits = 0;
    std::vector<Gate> gates;                       // program order, id == index
    std::vector<std::vector<int>> commuting_layers;  // gate ids, pairwise commuting
    std::vector<int> layer_of;                     // gate id -> layer index

    void validate() const;  // throws std::invalid_argument on any bad gate
};

/// Greedy left-to-right layering: a gate joins the newest layer iff it
/// commutes with every member (diagonal gates always commute; H commutes
/// with anything sharing no qubit).  Fills commuting_layers / layer_of.
void assign_commuting_layers(LogicalCircuit& circuit);

/// CPHASE(c, t, theta) == (global phase) * Rz_c(theta/2) * Rz_t(theta/2)
///                        * CNOT(c,t) * Rz_t(-theta/2) * CNOT(c,t).
/// The two Rz(theta/2) factors are diagonal and commute with the whole
/// sandwich, so they are recorded as zero-cost in-place annotations applied
/// after the closing CNOT.
struct CphaseDecomposition {
    int control = -1;
    int target = -1;
    double rz_angle = 0.0;      // -theta/2, realized between the CNOTs
    double local_phase = 0.0;   // theta/2 annotation on control and target
};
CphaseDecomposition decompose_cphase(const Gate& gate);  // rejects non-CPHASE

// -- benchmark generators ---------------------------------------------------

/// splitmix64: the shared deterministic PRNG stream for benchmark sampling.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    double next_unit();  // uniform in [0, 1)
};

/// Depth-1 QAOA Max-Cut on an Erdos-Renyi graph: one draw per ordered pair
/// (i < j), a CPHASE per sampled edge (all in a single commuting layer),
/// then the mixer as in-place H / RZ(2*beta) / H per qubit.  The cost angle
/// gamma and mixer angle beta are drawn from the same stream after the
/// edges.
LogicalCircuit gen_qaoa(int n_qubits, double edge_prob, std::uint64_t seed);

/// Textbook QFT without the final swaps: per qubit i an H followed by
/// CPHASE(i, j, pi / 2^(j-i)) for all j > i.  The shared chain qubit i is
/// kept first so fan-out grouping recognizes the single-control structure.
LogicalCircuit gen_qft(int n_qubits);

// -- circuit text format -----------------------------------------------------
//
//   qubits N
//   CP c t theta
//   H q
//   RZ q theta

LogicalCircuit parse_circuit(const std::string& text);
std::string format_circuit(const LogicalCircuit& circuit);
LogicalCircuit load_circuit_file(const std::string& path);

// -- Rz synthesis -------------------------------------------------------------

/// Gate counts of a synthesized single-qubit rotation over {H, S, T}.
struct RzDecomposition {
    std::string sequence;  // e.g. "HSTSH"; empty only for a zero angle
    int n_t = 0, n_s = 0, n_h = 0;
};

enum class RzProvider : std::uint8_t { MODEL, FILE };

/// Lookup table for the FILE provider: lines of "angle epsilon SEQUENCE".
class RzTable {
public:
    static RzTable parse(const std::string& text);
    static RzTable load(const std::string& path);
    const std::string* find(double angle, int epsilon) const;

private:
    std::map<std::pair<std::int64_t, int>, std::string> entries_;  // angle keyed at 1e-12
};

/// MODEL provider: n_t = round(3 * epsilon * log2(10)) + 4 and
/// n_s = n_h = n_t + 1 (epsilon ~ -log10 of the target precision), with a
/// deterministic alternating sequence realizing those counts.  Special
/// cases: angle pi/4 is exactly [T]; a zero angle is the empty sequence.
/// The FILE provider looks the (angle, epsilon) pair up in `table`.
RzDecomposition synthesize_rz(double angle, int epsilon, RzProvider provider,
                              const RzTable* table = nullptr);

} // namespace lscomp

#endif
