// Dense-unitary semantics oracle: elementary gates, commutation, and
// schedule replay.

#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "lscomp/oracle.hpp"

using namespace lscomp;

namespace {

constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;

double max_abs_diff(const Unitary& a, const Unitary& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.m.size(); ++i) worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
    return worst;
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("elementary gates match their textbook matrices") {
    Unitary h = Unitary::identity(1);
    h.apply_h(0);
    double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(h.at(0, 0) - cplx{s, 0}) < 1e-12);
    CHECK(std::abs(h.at(1, 1) - cplx{-s, 0}) < 1e-12);
    CHECK(h.unitarity_deviation() < 1e-12);

    Unitary rz = Unitary::identity(1);
    rz.apply_rz(0, kPi / 2);
    CHECK(std::abs(rz.at(0, 0) - std::exp(cplx{0, -kPi / 4})) < 1e-12);
    CHECK(std::abs(rz.at(1, 1) - std::exp(cplx{0, kPi / 4})) < 1e-12);
    CHECK(std::abs(rz.at(0, 1)) < 1e-12);

    Unitary cx = Unitary::identity(2);
    cx.apply_cnot(0, 1);  // control = bit 0
    // Basis order |q1 q0>: states 1 (q0=1,q1=0) and 3 (q0=1,q1=1) swap.
    CHECK(std::abs(cx.at(0, 0) - cplx{1, 0}) < 1e-12);
    CHECK(std::abs(cx.at(3, 1) - cplx{1, 0}) < 1e-12);
    CHECK(std::abs(cx.at(1, 3) - cplx{1, 0}) < 1e-12);
    CHECK(std::abs(cx.at(2, 2) - cplx{1, 0}) < 1e-12);

    Unitary cp = Unitary::identity(2);
    cp.apply_cphase(0, 1, kPi / 2);
    CHECK(std::abs(cp.at(0, 0) - cplx{1, 0}) < 1e-12);
    CHECK(std::abs(cp.at(1, 1) - cplx{1, 0}) < 1e-12);
    CHECK(std::abs(cp.at(2, 2) - cplx{1, 0}) < 1e-12);
    CHECK(std::abs(cp.at(3, 3) - std::exp(cplx{0, kPi / 2})) < 1e-12);
}

TEST_CASE("cphase decomposition replays to the gate up to global phase") {
    for (double theta : {kPi / 2, kPi / 4, -kPi / 8, 1.234}) {
        Gate g{0, GateKind::CPHASE, 0, 1, theta};
        CphaseDecomposition d = decompose_cphase(g);

        Unitary direct = Unitary::identity(2);
        direct.apply_cphase(0, 1, theta);

        Unitary built = Unitary::identity(2);
        built.apply_cnot(d.control, d.target);
        built.apply_rz(d.target, d.rz_angle);
        built.apply_cnot(d.control, d.target);
        built.apply_rz(d.control, d.local_phase);
        built.apply_rz(d.target, d.local_phase);

        CHECK(deviation_up_to_phase(direct, built) < 1e-12);
        CHECK(max_abs_diff(direct, built) > 1e-3);  // phases genuinely differ
    }
}

TEST_CASE("circuit unitary applies gates in program order") {
    LogicalCircuit c = gen_qft(3);
    Unitary u = circuit_unitary(c);
    CHECK(u.n_qubits == 3);
    CHECK(u.unitarity_deviation() < 1e-12);

    Unitary manual = Unitary::identity(3);
    for (const Gate& g : c.gates) manual.apply_gate(g);
    CHECK(max_abs_diff(u, manual) == 0.0);

    LogicalCircuit wide;
    wide.num_qubits = 9;
    CHECK_THROWS_AS(circuit_unitary(wide), std::invalid_argument);
}

TEST_CASE("commutation rules") {
    Gate cp01{0, GateKind::CPHASE, 0, 1, 0.7};
    Gate cp12{1, GateKind::CPHASE, 1, 2, 0.3};
    Gate rz1{2, GateKind::RZ, 1, -1, 0.9};
    Gate h1{3, GateKind::H, 1, -1, 0.0};
    Gate h3{4, GateKind::H, 2, -1, 0.0};

    CHECK(check_commute(cp01, cp12));  // diagonal gates always commute
    CHECK(check_commute(cp01, rz1));
    CHECK_FALSE(check_commute(cp01, h1));  // H on a shared qubit
    CHECK(check_commute(cp01, h3));        // disjoint supports
    CHECK(commuting_layers_valid(gen_qft(4)));
    CHECK(commuting_layers_valid(gen_qaoa(4, 1.0, 3)));
}

TEST_CASE("deviation_up_to_phase ignores global phase only") {
    Unitary a = Unitary::identity(2);
    a.apply_h(0);
    Unitary b = a;
    cplx phase = std::exp(cplx{0, 1.7});
    for (auto& x : b.m) x *= phase;
    CHECK(deviation_up_to_phase(a, b) < 1e-12);

    Unitary c = a;
    c.apply_rz(0, 0.1);  // a relative phase is a real deviation
    CHECK(deviation_up_to_phase(a, c) > 1e-3);
}

TEST_CASE("schedule replay honors interval start order") {
    // Two intervals out of insertion order: replay must sort by start.
    LogicalCircuit c;
    c.num_qubits = 1;
    c.gates.push_back({0, GateKind::H, 0, -1, 0.0});
    c.gates.push_back({1, GateKind::RZ, 0, -1, 0.8});
    assign_commuting_layers(c);

    EventSchedule sched;
    Interval second;
    second.start = Cycles{5};
    second.end = Cycles{6};
    second.op_id = "g1";
    second.gate_ids = {1};
    second.ops = {{SemanticOp::Kind::RZ, 0, -1, 0.8}};
    Interval first;
    first.start = Cycles{0};
    first.end = Cycles{1};
    first.op_id = "g0";
    first.gate_ids = {0};
    first.ops = {{SemanticOp::Kind::H, 0, -1, 0.0}};
    sched.intervals = {second, first};
    sched.makespan = Cycles{6};

    Unitary replayed = schedule_unitary(sched, 1);
    CHECK(deviation_up_to_phase(circuit_unitary(c), replayed) < 1e-12);

    VerificationResult v = verify_semantics(c, sched);
    CHECK(v.ok);
    CHECK(v.max_deviation < 1e-12);

    // Swapping the angle breaks equivalence and the verdict.
    sched.intervals[0].ops[0].angle = -0.8;
    CHECK_FALSE(verify_semantics(c, sched).ok);
}

} // TEST_SUITE
