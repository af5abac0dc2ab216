// Circuit IR, benchmark generators, CPHASE decomposition, Rz synthesis.

#include "doctest.h"

#include <cmath>
#include <set>
#include <stdexcept>

#include "lscomp/circuit.hpp"

using namespace lscomp;

namespace {

constexpr double kPi = 3.14159265358979323846;

int count_kind(const LogicalCircuit& c, GateKind k) {
    int n = 0;
    for (const Gate& g : c.gates) n += g.kind == k;
    return n;
}

int count_char(const std::string& s, char ch) {
    int n = 0;
    for (char c : s) n += c == ch;
    return n;
}

} // namespace

TEST_SUITE("circuit") {

TEST_CASE("qft gate census") {
    LogicalCircuit one = gen_qft(1);
    CHECK(count_kind(one, GateKind::H) == 1);
    CHECK(count_kind(one, GateKind::CPHASE) == 0);

    LogicalCircuit four = gen_qft(4);
    CHECK(count_kind(four, GateKind::H) == 4);
    CHECK(count_kind(four, GateKind::CPHASE) == 6);  // n(n-1)/2
    CHECK((int)four.gates.size() == 10);

    CHECK_THROWS_AS(gen_qft(0), std::invalid_argument);
}

TEST_CASE("qft angles follow pi / 2^(j-i)") {
    LogicalCircuit three = gen_qft(3);
    std::vector<double> angles;
    for (const Gate& g : three.gates)
        if (g.kind == GateKind::CPHASE) angles.push_back(g.angle);
    REQUIRE(angles.size() == 3);
    CHECK(angles[0] == doctest::Approx(kPi / 2));   // CP(0,1)
    CHECK(angles[1] == doctest::Approx(kPi / 4));   // CP(0,2)
    CHECK(angles[2] == doctest::Approx(kPi / 2));   // CP(1,2)
}

TEST_CASE("qft chain qubit comes first in every controlled-phase") {
    LogicalCircuit c = gen_qft(5);
    for (const Gate& g : c.gates)
        if (g.kind == GateKind::CPHASE) CHECK(g.q1 < g.q2);
}

TEST_CASE("qft commuting layers group the same-chain phases") {
    LogicalCircuit c = gen_qft(4);
    // H(0) | CP(0,*) | H(1) | CP(1,*) | H(2) | CP(2,3) | H(3)
    REQUIRE(c.commuting_layers.size() == 7);
    CHECK(c.commuting_layers[1].size() == 3);
    CHECK(c.commuting_layers[3].size() == 2);
    for (int id : c.commuting_layers[1]) CHECK(c.gates[id].q1 == 0);
    for (std::size_t l = 0; l < c.commuting_layers.size(); ++l)
        for (int id : c.commuting_layers[l]) CHECK(c.layer_of[id] == (int)l);
}

TEST_CASE("qaoa edge sampling is seeded and exact at the extremes") {
    LogicalCircuit full = gen_qaoa(4, 1.0, 123);
    CHECK(count_kind(full, GateKind::CPHASE) == 6);  // complete graph
    LogicalCircuit empty = gen_qaoa(4, 0.0, 123);
    CHECK(count_kind(empty, GateKind::CPHASE) == 0);

    // Regression pin: the seeded generator is part of the file format.
    LogicalCircuit big = gen_qaoa(20, 0.5, 7);
    CHECK(count_kind(big, GateKind::CPHASE) == 91);
    CHECK((int)big.gates.size() == 91 + 3 * 20);  // plus H/RZ/H mixer per qubit

    LogicalCircuit again = gen_qaoa(20, 0.5, 7);
    REQUIRE(big.gates.size() == again.gates.size());
    for (std::size_t i = 0; i < big.gates.size(); ++i) {
        CHECK(big.gates[i].kind == again.gates[i].kind);
        CHECK(big.gates[i].q1 == again.gates[i].q1);
        CHECK(big.gates[i].q2 == again.gates[i].q2);
        CHECK(big.gates[i].angle == again.gates[i].angle);
    }
}

TEST_CASE("qaoa cost layer commutes as one layer") {
    LogicalCircuit c = gen_qaoa(6, 1.0, 42);
    std::set<int> cost_layers;
    for (const Gate& g : c.gates)
        if (g.kind == GateKind::CPHASE) cost_layers.insert(c.layer_of[g.id]);
    CHECK(cost_layers.size() == 1);  // all phases are diagonal, one layer
    // Mixer: H, RZ(2*beta), H per qubit, after the cost layer.
    int h = count_kind(c, GateKind::H), rz = count_kind(c, GateKind::RZ);
    CHECK(h == 12);
    CHECK(rz == 6);
}

TEST_CASE("cphase decomposition splits the angle") {
    Gate cp{0, GateKind::CPHASE, 2, 5, kPi / 4};
    CphaseDecomposition d = decompose_cphase(cp);
    CHECK(d.control == 2);
    CHECK(d.target == 5);
    CHECK(d.rz_angle == doctest::Approx(-kPi / 8));
    CHECK(d.local_phase == doctest::Approx(kPi / 8));

    Gate h{1, GateKind::H, 0, -1, 0.0};
    CHECK_THROWS_AS(decompose_cphase(h), std::invalid_argument);
}

TEST_CASE("text format round-trips") {
    LogicalCircuit c = gen_qaoa(5, 0.6, 9);
    std::string text = format_circuit(c);
    LogicalCircuit back = parse_circuit(text);
    REQUIRE(back.gates.size() == c.gates.size());
    CHECK(back.num_qubits == c.num_qubits);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        CHECK(back.gates[i].kind == c.gates[i].kind);
        CHECK(back.gates[i].q1 == c.gates[i].q1);
        CHECK(back.gates[i].q2 == c.gates[i].q2);
        CHECK(back.gates[i].angle == doctest::Approx(c.gates[i].angle).epsilon(1e-12));
    }

    CHECK_THROWS_AS(parse_circuit("CP 0 1 0.5\n"), std::invalid_argument);  // missing header
    CHECK_THROWS_AS(parse_circuit("qubits 2\nCP 0 2 0.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("qubits 2\nXX 0 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("qubits 2\nCP 0 0 0.5\n"), std::invalid_argument);
}

TEST_CASE("model synthesis counts scale with precision") {
    // n_t = round(3 * eps * log2(10)) + 4, n_s = n_h = n_t + 1.
    RzDecomposition d6 = synthesize_rz(0.3, 6, RzProvider::MODEL);
    CHECK(d6.n_t == 64);
    CHECK(d6.n_s == 65);
    CHECK(d6.n_h == 65);
    CHECK(count_char(d6.sequence, 'T') == d6.n_t);
    CHECK(count_char(d6.sequence, 'S') == d6.n_s);
    CHECK(count_char(d6.sequence, 'H') == d6.n_h);

    int prev = 0;
    for (int eps = 1; eps <= 12; ++eps) {
        RzDecomposition d = synthesize_rz(0.3, eps, RzProvider::MODEL);
        CHECK(d.n_t > prev);
        prev = d.n_t;
    }
    CHECK_THROWS_AS(synthesize_rz(0.3, 0, RzProvider::MODEL), std::invalid_argument);
}

TEST_CASE("model synthesis special cases") {
    RzDecomposition t = synthesize_rz(kPi / 4, 6, RzProvider::MODEL);
    CHECK(t.sequence == "T");
    CHECK(t.n_t == 1);
    CHECK(t.n_s == 0);
    CHECK(t.n_h == 0);

    RzDecomposition zero = synthesize_rz(0.0, 6, RzProvider::MODEL);
    CHECK(zero.sequence.empty());
    CHECK(zero.n_t == 0);
}

TEST_CASE("file provider looks sequences up") {
    RzTable table = RzTable::parse("0.785398163397448 6 TST\n-0.25 4 HTH\n");
    RzDecomposition d = synthesize_rz(-0.25, 4, RzProvider::FILE, &table);
    CHECK(d.sequence == "HTH");
    CHECK(d.n_t == 1);
    CHECK(d.n_h == 2);
    CHECK_THROWS_AS(synthesize_rz(-0.25, 9, RzProvider::FILE, &table), std::invalid_argument);
    CHECK_THROWS_AS(synthesize_rz(0.5, 4, RzProvider::FILE, nullptr), std::invalid_argument);
    CHECK_THROWS_AS(RzTable::parse("0.5 6 TXT\n"), std::invalid_argument);
}

TEST_CASE("validate rejects malformed gates") {
    auto reject = [](Gate g) {
        LogicalCircuit c;
        c.num_qubits = 2;
        c.gates.push_back(g);
        assign_commuting_layers(c);
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    };
    reject({0, GateKind::CPHASE, 0, 0, 0.5});  // q1 == q2
    reject({0, GateKind::H, 5, -1, 0.0});      // out of range
    reject({0, GateKind::H, 0, 1, 0.0});       // single-qubit gate with q2
    reject({0, GateKind::RZ, 0, -1, 100.0});   // angle outside (-2*pi, 2*pi]

    LogicalCircuit shifted;
    shifted.num_qubits = 2;
    shifted.gates.push_back({1, GateKind::H, 0, -1, 0.0});  // id != index
    shifted.layer_of = {0};
    CHECK_THROWS_AS(shifted.validate(), std::invalid_argument);

    LogicalCircuit ok = gen_qft(3);
    CHECK_NOTHROW(ok.validate());
}

} // TEST_SUITE
