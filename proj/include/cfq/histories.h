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

#ifndef CFQ_HISTORIES_H
#define CFQ_HISTORIES_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfq/qstate.h"
#include "cfq/zeno.h"

namespace cfq {

/// One entry of a history. Off/On are the hypothetical computer-switch
/// outcomes (written f/n) recorded right after each computer insertion.
struct HistoryEvent {
    enum class Kind { Off, On, Output, Switch, Final };
    Kind kind;
    int bit = 0;

    bool is_hypothetical() const {
        return kind == Kind::Off || kind == Kind::On;
    }
    std::string token() const;
    bool operator==(const HistoryEvent &) const = default;
};

struct History {
    std::vector<HistoryEvent> events;
    PureState vector;  ///< v_h = P_k ... P_1 |000>

    bool all_off() const;
    bool any_on() const {
        return !all_off();
    }
    OutcomeRecord real_outcomes() const;
    /// Concatenated event tokens, e.g. "f0_3n0_31_2".
    std::string label() const;
};

/// Constraint on real outcomes; nullopt is a wildcard. A pattern shorter than
/// the record constrains only its prefix.
using OutcomePattern = std::vector<std::optional<int>>;

OutcomePattern to_pattern(const OutcomeRecord &record);
bool matches(const OutcomeRecord &record, const OutcomePattern &pattern);

class CapExceeded : public std::runtime_error {
   public:
    CapExceeded(std::size_t insertions, std::uint64_t cap);
    std::size_t insertions() const {
        return insertions_;
    }

   private:
    std::size_t insertions_;
};

constexpr std::uint64_t kDefaultHistoryCap = std::uint64_t{1} << 20;

/// Depth-first enumeration of every history consistent with `filter`.
/// Histories whose amplitude is zero are kept; branches whose label support
/// is annihilated by a projector are not. Throws CapExceeded when
/// 2^(insertions) > cap.
std::vector<History> enumerate_histories(
    const ProtocolParams &p, const ScheduleExtent &extent, const OutcomePattern &filter = {},
    std::uint64_t cap = kDefaultHistoryCap);

/// Histories whose norm2 exceeds `tol`.
std::vector<History> nonzero(const std::vector<History> &histories, double tol = 1e-24);

/// Sum of v_h over histories containing m.
PureState coherent_sum(const std::vector<History> &histories, const OutcomePattern &m);

/// Single projected trajectory with f at every insertion and success
/// outcomes elsewhere. O(N N').
History all_f_history(const ProtocolParams &p, int final_bit);
History all_f_history(const ProtocolParams &p, const ScheduleExtent &extent, int final_bit = 0);

/// Amplitude vector of the real record m under computer output x (no
/// hypothetical measurements).
PureState projective_trace(const ProtocolParams &p, const ScheduleExtent &extent, const OutcomeRecord &m);

struct CounterfactualVerdict {
    bool counterfactual = false;
    bool single_all_f_history = false;    ///< condition (1)
    bool single_computer_output = false;  ///< condition (2)
    double other_output_probability = 0;
    std::vector<History> witnesses;  ///< n-containing histories with nonzero v_h
};

/// Tests both conditions for the record m under params.computer_output.
/// Condition (2) holds when the other output gives m probability <= tol,
/// and vacuously when the extent contains no computer insertion.
CounterfactualVerdict is_counterfactual_outcome(
    const ProtocolParams &p, const ScheduleExtent &extent, const OutcomeRecord &m,
    std::uint64_t cap = kDefaultHistoryCap, double tol = 1e-12);

struct CounterfactualityReport {
    double c0 = 0;
    double c1 = 0;
    double p_mm0_given_0 = 0;
    double p_mm1_given_1 = 0;
};

CounterfactualityReport counterfactuality_report(const ProtocolParams &p);

/// Groups of nonzero histories sharing a real record whose amplitudes cancel
/// to below `tol`. Diagnostic only: the discounting rule is never used to
/// decide counterfactuality.
std::vector<std::vector<History>> cancelling_groups(const std::vector<History> &histories, double tol = 1e-12);

}  // namespace cfq

#endif
