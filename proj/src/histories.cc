// Copyright 2026 The cfq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cfq/histories.h"

#include <map>

namespace cfq {

std::string HistoryEvent::token() const {
    switch (kind) {
        case Kind::Off:
            return "f";
        case Kind::On:
            return "n";
        case Kind::Output:
            return std::to_string(bit) + "_3";
        case Kind::Switch:
            return std::to_string(bit) + "_2";
        case Kind::Final:
            return std::to_string(bit) + "_1";
    }
    return "?";
}

bool History::all_off() const {
    for (const auto &e : events) {
        if (e.kind == HistoryEvent::Kind::On) {
            return false;
        }
    }
    return true;
}

OutcomeRecord History::real_outcomes() const {
    OutcomeRecord out;
    for (const auto &e : events) {
        switch (e.kind) {
            case HistoryEvent::Kind::Output:
                out.push_back({Register::ComputerOutput, e.bit});
                break;
            case HistoryEvent::Kind::Switch:
                out.push_back({Register::ComputerSwitch, e.bit});
                break;
            case HistoryEvent::Kind::Final:
                out.push_back({Register::SubroutineSwitch, e.bit});
                break;
            default:
                break;
        }
    }
    return out;
}

std::string History::label() const {
    std::string out;
    for (const auto &e : events) {
        out += e.token();
    }
    return out;
}

OutcomePattern to_pattern(const OutcomeRecord &record) {
    OutcomePattern out;
    for (const auto &m : record) {
        out.emplace_back(m.bit);
    }
    return out;
}

bool matches(const OutcomeRecord &record, const OutcomePattern &pattern) {
    if (pattern.size() > record.size()) {
        return false;
    }
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (pattern[i] && *pattern[i] != record[i].bit) {
            return false;
        }
    }
    return true;
}

CapExceeded::CapExceeded(std::size_t insertions, std::uint64_t cap)
    : std::runtime_error(
          "history enumeration needs cap >= 2^" + std::to_string(insertions) + " (" + std::to_string(insertions) +
          " computer insertions), got cap " + std::to_string(cap)),
      insertions_(insertions) {
}

namespace {

std::size_t count_insertions(const ProtocolParams &p, const ScheduleExtent &extent) {
    return extent.routine_steps * static_cast<std::size_t>(p.n) * static_cast<std::size_t>(p.insertions_per_step());
}

void check_cap(const ProtocolParams &p, const ScheduleExtent &extent, std::uint64_t cap) {
    std::size_t ins = count_insertions(p, extent);
    if (ins >= 63 || (std::uint64_t{1} << ins) > cap) {
        throw CapExceeded(ins, cap);
    }
}

HistoryEvent::Kind event_kind(ProtocolOp::Kind kind) {
    switch (kind) {
        case ProtocolOp::Kind::MeasureOutput:
            return HistoryEvent::Kind::Output;
        case ProtocolOp::Kind::MeasureSwitch:
            return HistoryEvent::Kind::Switch;
        default:
            return HistoryEvent::Kind::Final;
    }
}

struct Enumerator {
    const ProtocolParams &params;
    const std::vector<ProtocolOp> &ops;
    const OutcomePattern &filter;
    std::vector<History> out;
    std::vector<HistoryEvent> events;

    void walk(std::size_t i, std::size_t real_index, const PureState &state) {
        if (i == ops.size()) {
            out.push_back({events, state});
            return;
        }
        const ProtocolOp &op = ops[i];
        if (op.kind == ProtocolOp::Kind::Insertion) {
            PureState ran = apply_op(state, op, params);
            for (int on = 0; on < 2; ++on) {
                PureState branch = project(ran, Register::ComputerSwitch, on);
                if (branch.empty()) {
                    continue;
                }
                events.push_back({on ? HistoryEvent::Kind::On : HistoryEvent::Kind::Off, on});
                walk(i + 1, real_index, branch);
                events.pop_back();
            }
            return;
        }
        if (op.is_measurement()) {
            for (int b = 0; b < 2; ++b) {
                if (real_index < filter.size() && filter[real_index] && *filter[real_index] != b) {
                    continue;
                }
                PureState branch = project(state, op.measured_register(), b);
                if (branch.empty()) {
                    continue;
                }
                events.push_back({event_kind(op.kind), b});
                walk(i + 1, real_index + 1, branch);
                events.pop_back();
            }
            return;
        }
        walk(i + 1, real_index, apply_op(state, op, params));
    }
};

}  // namespace

std::vector<History> enumerate_histories(
    const ProtocolParams &p, const ScheduleExtent &extent, const OutcomePattern &filter, std::uint64_t cap) {
    p.validate();
    if (p.epsilon != 0.0) {
        throw std::invalid_argument("enumerate_histories: decoherent protocols have no pure histories (epsilon != 0)");
    }
    check_cap(p, extent, cap);
    std::vector<ProtocolOp> ops = schedule(p, extent);
    Enumerator e{p, ops, filter, {}, {}};
    e.walk(0, 0, PureState::basis(BasisLabel{}));
    return std::move(e.out);
}

std::vector<History> nonzero(const std::vector<History> &histories, double tol) {
    std::vector<History> out;
    for (const auto &h : histories) {
        if (h.vector.norm2() > tol) {
            out.push_back(h);
        }
    }
    return out;
}

PureState coherent_sum(const std::vector<History> &histories, const OutcomePattern &m) {
    PureState total;
    for (const auto &h : histories) {
        if (matches(h.real_outcomes(), m)) {
            total += h.vector;
        }
    }
    return total;
}

History all_f_history(const ProtocolParams &p, const ScheduleExtent &extent, int final_bit) {
    p.validate();
    History h;
    PureState s = PureState::basis(BasisLabel{});
    for_each_op(p, extent, [&](const ProtocolOp &op) {
        if (op.kind == ProtocolOp::Kind::Insertion) {
            s = project(apply_op(s, op, p), Register::ComputerSwitch, 0);
            h.events.push_back({HistoryEvent::Kind::Off, 0});
        } else if (op.kind == ProtocolOp::Kind::MeasureFinal) {
            s = project(s, Register::SubroutineSwitch, final_bit);
            h.events.push_back({HistoryEvent::Kind::Final, final_bit});
        } else if (op.is_measurement()) {
            s = project(s, op.measured_register(), 0);
            h.events.push_back({event_kind(op.kind), 0});
        } else {
            s = apply_op(s, op, p);
        }
    });
    h.vector = std::move(s);
    return h;
}

History all_f_history(const ProtocolParams &p, int final_bit) {
    return all_f_history(p, ScheduleExtent::full(p), final_bit);
}

PureState projective_trace(const ProtocolParams &p, const ScheduleExtent &extent, const OutcomeRecord &m) {
    p.validate();
    PureState s = PureState::basis(BasisLabel{});
    std::size_t r = 0;
    for_each_op(p, extent, [&](const ProtocolOp &op) {
        if (op.is_measurement()) {
            if (r >= m.size() || m[r].reg != op.measured_register()) {
                throw std::invalid_argument("projective_trace: record does not fit the protocol schedule");
            }
            s = project(s, op.measured_register(), m[r].bit);
            ++r;
        } else {
            s = apply_op(s, op, p);
        }
    });
    if (r != m.size()) {
        throw std::invalid_argument("projective_trace: record longer than the protocol schedule");
    }
    return s;
}

CounterfactualVerdict is_counterfactual_outcome(
    const ProtocolParams &p, const ScheduleExtent &extent, const OutcomeRecord &m, std::uint64_t cap, double tol) {
    CounterfactualVerdict v;
    std::vector<History> hs = nonzero(enumerate_histories(p, extent, to_pattern(m), cap));
    // A filter equal to the full record leaves only histories containing m.
    for (const auto &h : hs) {
        if (h.any_on()) {
            v.witnesses.push_back(h);
        }
    }
    v.single_all_f_history = hs.size() == 1 && hs.front().all_off();

    if (count_insertions(p, extent) == 0) {
        v.single_computer_output = true;
    } else {
        v.other_output_probability = projective_trace(p.with_output(1 - p.computer_output), extent, m).norm2();
        v.single_computer_output = v.other_output_probability <= tol;
    }
    v.counterfactual = v.single_all_f_history && v.single_computer_output;
    return v;
}

CounterfactualityReport counterfactuality_report(const ProtocolParams &p) {
    CounterfactualityReport r;
    r.c0 = all_f_history(p, 0).vector.norm2();
    r.c1 = all_f_history(p, 1).vector.norm2();
    r.p_mm0_given_0 = run_ideal(p.with_output(0)).p_success_0;
    r.p_mm1_given_1 = run_ideal(p.with_output(1)).p_success_1;
    return r;
}

std::vector<std::vector<History>> cancelling_groups(const std::vector<History> &histories, double tol) {
    std::map<std::pair<std::string, BasisLabel>, std::vector<const History *>> by_slot;
    for (const auto &h : histories) {
        std::string record = to_string(h.real_outcomes());
        for (const auto &[label, a] : h.vector) {
            if (std::abs(a) > tol) {
                by_slot[{record, label}].push_back(&h);
            }
        }
    }
    std::vector<std::vector<History>> out;
    for (const auto &[slot, group] : by_slot) {
        if (group.size() < 2) {
            continue;
        }
        Amplitude sum{};
        for (const History *h : group) {
            sum += h->vector.amplitude(slot.second);
        }
        if (std::abs(sum) <= tol) {
            std::vector<History> g;
            for (const History *h : group) {
                g.push_back(*h);
            }
            out.push_back(std::move(g));
        }
    }
    return out;
}

}  // namespace cfq
