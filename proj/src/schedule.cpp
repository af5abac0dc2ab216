#include "lscomp/schedule.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace lscomp {

const char* to_string(Stage s) {
    switch (s) {
        case Stage::NONE: return "-";
        case Stage::A: return "A";
        case Stage::B: return "B";
        case Stage::C: return "C";
    }
    return "?";
}

const char* to_string(OpKind k) {
    switch (k) {
        case OpKind::MERGE: return "merge";
        case OpKind::INJECT: return "inject";
        case OpKind::T_ROUTE: return "t_route";
        case OpKind::MSC_CULTIVATE: return "cultivate";
        case OpKind::MSC_CONSUME: return "consume";
        case OpKind::INPLACE: return "inplace";
        case OpKind::RESET: return "reset";
    }
    return "?";
}

std::vector<std::string> check_schedule(const EventSchedule& schedule, const LayoutGrid& grid,
                                        const LogicalCircuit& circuit) {
    std::vector<std::string> out;
    auto complain = [&](const std::string& s) {
        if (out.size() < 200) out.push_back(s);
    };

    // Cell bounds / roles and cell exclusivity.
    std::map<Coord, std::vector<const Interval*>> by_cell;
    for (const Interval& iv : schedule.intervals) {
        if (iv.end < iv.start)
            complain("interval " + iv.op_id + ": negative duration");
        for (const Coord& c : iv.cells) {
            if (!grid.in_bounds(c)) {
                complain("interval " + iv.op_id + ": cell out of bounds " + to_string(c));
                continue;
            }
            if (grid.at(c).role == CellRole::WALL)
                complain("interval " + iv.op_id + ": reserves WALL cell " + to_string(c));
            if (!(iv.end == iv.start)) by_cell[c].push_back(&iv);
        }
    }
    for (auto& [cell, ivs] : by_cell) {
        std::sort(ivs.begin(), ivs.end(), [](const Interval* a, const Interval* b) {
            return a->start < b->start;
        });
        for (std::size_t i = 1; i < ivs.size(); ++i)
            if (ivs[i]->start < ivs[i - 1]->end)
                complain("cell " + to_string(cell) + ": overlap between " + ivs[i - 1]->op_id +
                         " and " + ivs[i]->op_id);
    }

    // Per-group stage ordering.
    std::map<int, std::map<Stage, std::pair<Cycles, Cycles>>> stage_window;
    for (const Interval& iv : schedule.intervals) {
        if (iv.group < 0 || iv.stage == Stage::NONE) continue;
        auto& w = stage_window[iv.group];
        auto it = w.find(iv.stage);
        if (it == w.end()) {
            w[iv.stage] = {iv.start, iv.end};
        } else {
            it->second.first = std::min(it->second.first, iv.start);
            it->second.second = Cycles::max(it->second.second, iv.end);
        }
    }
    for (auto& [g, w] : stage_window) {
        auto a = w.find(Stage::A), b = w.find(Stage::B), c = w.find(Stage::C);
        if (a != w.end() && b != w.end() && b->second.first < a->second.second)
            complain("group " + std::to_string(g) + ": stage B starts before stage A ends");
        if (b != w.end() && c != w.end() && c->second.first < b->second.second)
            complain("group " + std::to_string(g) + ": stage C starts before stage B ends");
        if (a != w.end() && c != w.end() && c->second.first < a->second.second)
            complain("group " + std::to_string(g) + ": stage C starts before stage A ends");
    }

    // Per-qubit lock exclusivity: a group owns its qubits from its first to
    // its last qubit-bearing interval; everything else locks per interval.
    struct LockSpan {
        Cycles start, end;
        std::string owner;
    };
    std::map<int, std::vector<LockSpan>> locks;
    std::map<std::pair<int, int>, LockSpan> group_locks;  // (group, qubit)
    for (const Interval& iv : schedule.intervals) {
        if (iv.end == iv.start) continue;
        for (int q : iv.qubits) {
            if (q < 0 || q >= circuit.num_qubits) {
                complain("interval " + iv.op_id + ": bad qubit " + std::to_string(q));
                continue;
            }
            if (iv.group >= 0) {
                auto key = std::make_pair(iv.group, q);
                auto it = group_locks.find(key);
                if (it == group_locks.end()) {
                    group_locks[key] = {iv.start, iv.end, "group " + std::to_string(iv.group)};
                } else {
                    it->second.start = std::min(it->second.start, iv.start);
                    it->second.end = Cycles::max(it->second.end, iv.end);
                }
            } else {
                locks[q].push_back({iv.start, iv.end, iv.op_id});
            }
        }
    }
    for (auto& [key, span] : group_locks) locks[key.second].push_back(span);
    for (auto& [q, spans] : locks) {
        std::sort(spans.begin(), spans.end(), [](const LockSpan& a, const LockSpan& b) {
            return a.start < b.start;
        });
        for (std::size_t i = 1; i < spans.size(); ++i)
            if (spans[i].start < spans[i - 1].end)
                complain("qubit " + std::to_string(q) + ": lock overlap between " +
                         spans[i - 1].owner + " and " + spans[i].owner);
    }

    // Completeness and dependency order between non-commuting gates.
    std::vector<std::pair<Cycles, Cycles>> gate_window(circuit.gates.size(),
                                                       {Cycles{0}, Cycles{0}});
    std::vector<bool> seen(circuit.gates.size(), false);
    for (const Interval& iv : schedule.intervals)
        for (int g : iv.gate_ids) {
            if (g < 0 || g >= (int)circuit.gates.size()) {
                complain("interval " + iv.op_id + ": bad gate id " + std::to_string(g));
                continue;
            }
            if (!seen[g]) {
                gate_window[g] = {iv.start, iv.end};
                seen[g] = true;
            } else {
                gate_window[g].first = std::min(gate_window[g].first, iv.start);
                gate_window[g].second = Cycles::max(gate_window[g].second, iv.end);
            }
        }
    for (std::size_t g = 0; g < circuit.gates.size(); ++g)
        if (!seen[g]) complain("gate " + std::to_string(g) + " never scheduled");

    // Per-qubit program-order chains across different commuting layers.
    std::vector<std::vector<int>> on_qubit(circuit.num_qubits);
    for (const Gate& g : circuit.gates) {
        on_qubit[g.q1].push_back(g.id);
        if (g.q2 >= 0) on_qubit[g.q2].push_back(g.id);
    }
    for (const auto& chain : on_qubit)
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            for (std::size_t j = i + 1; j < chain.size(); ++j) {
                int a = chain[i], b = chain[j];
                if (circuit.layer_of[a] == circuit.layer_of[b]) continue;
                if (!seen[a] || !seen[b]) continue;
                if (gate_window[b].first < gate_window[a].second)
                    complain("dependency violation: gate " + std::to_string(b) +
                             " starts before gate " + std::to_string(a) + " ends");
            }

    return out;
}

std::string schedule_to_csv(const EventSchedule& schedule) {
    std::vector<const Interval*> rows;
    rows.reserve(schedule.intervals.size());
    for (const Interval& iv : schedule.intervals) rows.push_back(&iv);
    std::sort(rows.begin(), rows.end(), [](const Interval* a, const Interval* b) {
        if (a->start != b->start) return a->start < b->start;
        if (a->end != b->end) return a->end < b->end;
        if (a->op_id != b->op_id) return a->op_id < b->op_id;
        return (int)a->stage < (int)b->stage;
    });
    std::ostringstream out;
    out << "time_start,time_end,op_id,stage,kind,cells\n";
    for (const Interval* iv : rows) {
        out << iv->start.str() << "," << iv->end.str() << "," << iv->op_id << ","
            << to_string(iv->stage) << "," << to_string(iv->kind) << ",";
        for (std::size_t i = 0; i < iv->cells.size(); ++i) {
            if (i) out << ";";
            out << to_string(iv->cells[i]);
        }
        out << "\n";
    }
    return out.str();
}

} // namespace lscomp
