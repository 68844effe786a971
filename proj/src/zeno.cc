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

#include "cfq/zeno.h"

#include <stdexcept>

namespace cfq {

std::string to_string(Variant v) {
    return v == Variant::Modified ? "modified" : "standard";
}

std::string to_string(TallyMode t) {
    switch (t) {
        case TallyMode::None:
            return "none";
        case TallyMode::AllRuns:
            return "all";
        case TallyMode::OnlyOutput1:
            return "output1";
        case TallyMode::StageDependent:
            return "staged";
    }
    return "?";
}

Variant parse_variant(const std::string &text) {
    if (text == "standard") {
        return Variant::Standard;
    }
    if (text == "modified") {
        return Variant::Modified;
    }
    throw std::invalid_argument("unknown variant '" + text + "' (expected standard|modified)");
}

TallyMode parse_tally(const std::string &text) {
    if (text == "none") {
        return TallyMode::None;
    }
    if (text == "all") {
        return TallyMode::AllRuns;
    }
    if (text == "output1") {
        return TallyMode::OnlyOutput1;
    }
    if (text == "staged") {
        return TallyMode::StageDependent;
    }
    throw std::invalid_argument("unknown tally mode '" + text + "' (expected none|all|output1|staged)");
}

void ProtocolParams::validate() const {
    if (n < 1) {
        throw std::invalid_argument("N must be >= 1");
    }
    if (n_prime < 1) {
        throw std::invalid_argument("N' must be >= 1");
    }
    if (computer_output != 0 && computer_output != 1) {
        throw std::invalid_argument("computer output must be 0 or 1");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in [0, 1]");
    }
}

Register ProtocolOp::measured_register() const {
    switch (kind) {
        case Kind::MeasureOutput:
            return Register::ComputerOutput;
        case Kind::MeasureSwitch:
            return Register::ComputerSwitch;
        case Kind::MeasureFinal:
            return Register::SubroutineSwitch;
        default:
            throw std::logic_error("measured_register on a non-measurement op");
    }
}

std::vector<ProtocolOp> schedule(const ProtocolParams &p, const ScheduleExtent &extent) {
    std::vector<ProtocolOp> ops;
    for_each_op(p, extent, [&](const ProtocolOp &op) { ops.push_back(op); });
    return ops;
}

std::string MeasurementOutcome::token() const {
    return std::to_string(bit) + "_" + std::to_string(register_subscript(reg));
}

std::string to_string(const OutcomeRecord &record) {
    std::string out;
    for (const auto &m : record) {
        out += m.token();
    }
    return out;
}

OutcomeRecord success_record(const ProtocolParams &p, const ScheduleExtent &extent, int final_bit) {
    OutcomeRecord out;
    for_each_op(p, extent, [&](const ProtocolOp &op) {
        if (op.kind == ProtocolOp::Kind::MeasureFinal) {
            out.push_back({Register::SubroutineSwitch, final_bit});
        } else if (op.is_measurement()) {
            out.push_back({op.measured_register(), 0});
        }
    });
    return out;
}

std::uint64_t tally_increment(TallyMode tally, int x, std::size_t stage) {
    switch (tally) {
        case TallyMode::None:
            return 0;
        case TallyMode::AllRuns:
            return 1;
        case TallyMode::OnlyOutput1:
            return x == 1 ? 1 : 0;
        case TallyMode::StageDependent:
            return stage + 1;
    }
    return 0;
}

ComputerAction default_action(Variant v) {
    return v == Variant::Modified ? ComputerAction::Xor : ComputerAction::Set;
}

PureState insert_computer(const PureState &state, int x, TallyMode tally, std::size_t stage, ComputerAction action) {
    std::uint64_t inc = tally_increment(tally, x, stage);
    PureState out;
    for (const auto &[label, a] : state) {
        if (label.q2 == 1) {
            BasisLabel ran = label;
            ran.q3 = static_cast<std::uint8_t>(action == ComputerAction::Xor ? label.q3 ^ x : x);
            ran.tally += inc;
            out.add(ran, a);
        } else {
            out.add(label, a);
        }
    }
    return out;
}

PureState flip_sign_111(const PureState &state) {
    PureState out;
    for (const auto &[label, a] : state) {
        bool hit = label.q1 == 1 && label.q2 == 1 && label.q3 == 1;
        out.add(label, hit ? -a : a);
    }
    return out;
}

namespace {

bool subroutine_on(const BasisLabel &label) {
    return label.q1 == 1;
}

}  // namespace

PureState apply_op(const PureState &state, const ProtocolOp &op, const ProtocolParams &p, const ComputerModel &computer) {
    using K = ProtocolOp::Kind;
    switch (op.kind) {
        case K::RoutineRotation:
            return apply_one_qubit(state, Register::SubroutineSwitch, rotation(p.theta_prime()));
        case K::SwitchRotation:
            return apply_one_qubit(state, Register::ComputerSwitch, rotation(p.theta()), subroutine_on);
        case K::Insertion: {
            const InsertionFn &fn = op.inverse ? computer.inverse : computer.forward;
            if (!fn) {
                return insert_computer(state, p.computer_output, p.tally, op.stage, default_action(p.variant));
            }
            return fn(state, p.computer_output, p.tally, op.stage);
        }
        case K::PhaseFlip:
            return flip_sign_111(state);
        case K::MeasureOutput:
        case K::MeasureSwitch:
            return project(state, op.measured_register(), 0);
        case K::MeasureFinal:
            return state;
    }
    return state;
}

StepBranches subroutine_step(const PureState &state, const ProtocolParams &p, std::size_t step, const ComputerModel &computer) {
    using K = ProtocolOp::Kind;
    std::size_t stage = step * static_cast<std::size_t>(p.insertions_per_step());
    PureState s = apply_op(state, {K::SwitchRotation, 0, step, stage, false}, p, computer);
    s = apply_op(s, {K::Insertion, 0, step, stage, false}, p, computer);
    if (p.variant == Variant::Modified) {
        s = flip_sign_111(s);
        s = apply_op(s, {K::Insertion, 0, step, stage + 1, true}, p, computer);
    }
    StepBranches out;
    for (int b = 0; b < 2; ++b) {
        Measurement m = measure(s, Register::ComputerOutput, b);
        m.probability *= s.norm2() / state.norm2();
        out.branch[b] = std::move(m.state);
        out.probability[b] = m.probability;
    }
    return out;
}

ProtocolResult run_ideal(const ProtocolParams &p, const ComputerModel &computer) {
    p.validate();
    PureState s = PureState::basis(BasisLabel{});
    for_each_op(p, ScheduleExtent::full(p), [&](const ProtocolOp &op) { s = apply_op(s, op, p, computer); });
    ProtocolResult r;
    r.final_states[0] = project(s, Register::SubroutineSwitch, 0);
    r.final_states[1] = project(s, Register::SubroutineSwitch, 1);
    r.p_success_0 = r.final_states[0].norm2();
    r.p_success_1 = r.final_states[1].norm2();
    r.p_fail = 1.0 - r.p_success_0 - r.p_success_1;
    return r;
}

TallyResult run_with_tally_sparse(const ProtocolParams &p) {
    TallyResult out;
    out.result = run_ideal(p);
    double success = out.result.p_success();
    for (int i = 0; i < 2; ++i) {
        for (const auto &[label, a] : out.result.final_states[i]) {
            out.tally_given_success_final[i][label.tally] += std::norm(a) / success;
            out.tally_given_success[label.tally] += std::norm(a) / success;
        }
    }
    return out;
}

TallyResult run_with_tally(const ProtocolParams &p) {
    if (p.tally == TallyMode::StageDependent) {
        return run_with_tally_sparse(p);
    }
    return run_with_tally_dense(p);
}

}  // namespace cfq
