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

#ifndef CFQ_ZENO_H
#define CFQ_ZENO_H

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "cfq/qstate.h"

namespace cfq {

enum class Variant { Standard, Modified };

/// How the optional fourth register records computer runs.
///   AllRuns        +1 on every run
///   OnlyOutput1    +1 on every run, but only when the computer output is 1
///   StageDependent +(global insertion index + 1), so distinct histories end
///                  with distinct tally values
enum class TallyMode { None, AllRuns, OnlyOutput1, StageDependent };

std::string to_string(Variant v);
std::string to_string(TallyMode t);
Variant parse_variant(const std::string &text);
TallyMode parse_tally(const std::string &text);

struct ProtocolParams {
    int n = 1;        ///< subroutine steps
    int n_prime = 1;  ///< routine steps
    Variant variant = Variant::Standard;
    int computer_output = 0;
    double epsilon = 0.0;
    TallyMode tally = TallyMode::None;

    double theta() const {
        return std::numbers::pi / (2.0 * n);
    }
    double theta_prime() const {
        return std::numbers::pi / (2.0 * n_prime);
    }
    int insertions_per_step() const {
        return variant == Variant::Modified ? 2 : 1;
    }
    ProtocolParams with_output(int x) const {
        ProtocolParams p = *this;
        p.computer_output = x;
        return p;
    }

    /// Throws std::invalid_argument on n, n' < 1, x not a bit or epsilon outside [0, 1].
    void validate() const;
};

/// How far along the protocol a walk goes. The one-step history listings
/// stop after one routine step without the final subroutine-switch
/// measurement.
struct ScheduleExtent {
    std::size_t routine_steps = 0;
    bool include_final = true;

    static ScheduleExtent full(const ProtocolParams &p) {
        return {static_cast<std::size_t>(p.n_prime), true};
    }
    static ScheduleExtent partial(std::size_t routine_steps) {
        return {routine_steps, false};
    }
};

/// One primitive action of the protocol, in time order.
struct ProtocolOp {
    enum class Kind {
        RoutineRotation,  ///< R' on q1
        SwitchRotation,   ///< R on q2, controlled on q1 = 1
        Insertion,        ///< computer acts on q2 = 1 labels
        PhaseFlip,        ///< -1 on (q1,q2,q3) = (1,1,1), between Modified insertions
        MeasureOutput,    ///< q3, success outcome 0
        MeasureSwitch,    ///< q2, success outcome 0
        MeasureFinal,     ///< q1, both outcomes kept
    };
    Kind kind;
    std::size_t routine_step = 0;
    std::size_t sub_step = 0;  ///< global subroutine step
    std::size_t stage = 0;     ///< global insertion index (Insertion only)
    bool inverse = false;      ///< second insertion of a Modified step

    bool is_measurement() const {
        return kind == Kind::MeasureOutput || kind == Kind::MeasureSwitch || kind == Kind::MeasureFinal;
    }
    Register measured_register() const;
};

template <typename Visitor>
void for_each_op(const ProtocolParams &p, const ScheduleExtent &extent, Visitor &&visit) {
    using K = ProtocolOp::Kind;
    std::size_t sub = 0;
    std::size_t stage = 0;
    for (std::size_t k = 0; k < extent.routine_steps; ++k) {
        visit(ProtocolOp{K::RoutineRotation, k, sub, stage, false});
        for (int j = 0; j < p.n; ++j, ++sub) {
            visit(ProtocolOp{K::SwitchRotation, k, sub, stage, false});
            visit(ProtocolOp{K::Insertion, k, sub, stage++, false});
            if (p.variant == Variant::Modified) {
                visit(ProtocolOp{K::PhaseFlip, k, sub, stage, false});
                visit(ProtocolOp{K::Insertion, k, sub, stage++, true});
            }
            visit(ProtocolOp{K::MeasureOutput, k, sub, stage, false});
        }
        visit(ProtocolOp{K::MeasureSwitch, k, sub, stage, false});
    }
    if (extent.include_final) {
        visit(ProtocolOp{K::MeasureFinal, extent.routine_steps, sub, stage, false});
    }
}

std::vector<ProtocolOp> schedule(const ProtocolParams &p, const ScheduleExtent &extent);

struct MeasurementOutcome {
    Register reg;
    int bit;

    /// Outcome token, e.g. "0_3" (output qubit measured 0).
    std::string token() const;
    bool operator==(const MeasurementOutcome &) const = default;
};

/// Real measurement outcomes in protocol order.
using OutcomeRecord = std::vector<MeasurementOutcome>;

std::string to_string(const OutcomeRecord &record);

/// The success record m (N 0_3's then 0_2 per routine step), optionally
/// followed by the final outcome m_i = i_1.
OutcomeRecord success_record(const ProtocolParams &p, const ScheduleExtent &extent, int final_bit = 0);

struct ProtocolResult {
    double p_success_0 = 0;  ///< P(m m_0 | x)
    double p_success_1 = 0;  ///< P(m m_1 | x)
    double p_fail = 0;
    std::array<PureState, 2> final_states;  ///< un-normalized, post-selected on m m_i

    double p_success() const {
        return p_success_0 + p_success_1;
    }
};

/// How an insertion writes the output on q2 = 1 labels.
///   Set  q3 := x (Standard variant)
///   Xor  q3 := q3 xor x, self-inverse (Modified variant, whose second
///        insertion undoes the first)
/// Both agree whenever q3 = 0 before the insertion.
enum class ComputerAction { Set, Xor };

ComputerAction default_action(Variant v);

using InsertionFn = std::function<PureState(const PureState &, int x, TallyMode, std::size_t stage)>;

PureState insert_computer(
    const PureState &state, int x, TallyMode tally, std::size_t stage, ComputerAction action = ComputerAction::Set);

/// Overrides for the forward computer and the one used at the second
/// Modified insertion. Empty functions fall back to insert_computer with
/// default_action(variant).
struct ComputerModel {
    InsertionFn forward;
    InsertionFn inverse;
};

std::uint64_t tally_increment(TallyMode tally, int x, std::size_t stage);

PureState flip_sign_111(const PureState &state);

/// Applies one protocol op to a sparse state. Measurement ops post-select
/// the success outcome (0); MeasureFinal is a no-op here.
PureState apply_op(
    const PureState &state, const ProtocolOp &op, const ProtocolParams &p, const ComputerModel &computer = {});

struct StepBranches {
    std::array<PureState, 2> branch;  ///< keyed by the q3 outcome
    std::array<double, 2> probability;
};

/// One subroutine step (rotation, insertion(s), then the output-qubit
/// measurement). `step` is the global subroutine step index.
StepBranches subroutine_step(
    const PureState &state, const ProtocolParams &p, std::size_t step, const ComputerModel &computer = {});

/// Exact post-selected run of the noiseless protocol.
ProtocolResult run_ideal(const ProtocolParams &p, const ComputerModel &computer = {});

struct TallyResult {
    ProtocolResult result;
    /// Distribution of the tally register conditioned on success, per final outcome and combined.
    std::array<std::map<std::uint64_t, double>, 2> tally_given_success_final;
    std::map<std::uint64_t, double> tally_given_success;
};

/// Runs with the tally register participating. Unit-increment modes use a
/// dense tally-resolved engine; StageDependent uses the sparse engine.
TallyResult run_with_tally(const ProtocolParams &p);

/// Sparse-engine reference for any tally mode (exponential label growth for StageDependent).
TallyResult run_with_tally_sparse(const ProtocolParams &p);

/// Dense tally-resolved engine; requires AllRuns, OnlyOutput1 or None.
TallyResult run_with_tally_dense(const ProtocolParams &p);

}  // namespace cfq

#endif
