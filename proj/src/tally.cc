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

// Tally-resolved engine for unit-increment tally modes. Each (q1,q2,q3)
// basis state owns a lane of amplitudes indexed by tally value; a computer
// run shifts the lane base instead of moving data.

#include <algorithm>
#include <stdexcept>

#include "cfq/zeno.h"

namespace cfq {
namespace {

struct Lane {
    std::int64_t base = 0;
    std::vector<Amplitude> amp;

    bool empty() const {
        return amp.empty();
    }
    std::int64_t end() const {
        return base + static_cast<std::int64_t>(amp.size());
    }
    Amplitude at(std::int64_t t) const {
        std::int64_t i = t - base;
        return (i >= 0 && i < static_cast<std::int64_t>(amp.size())) ? amp[i] : Amplitude{};
    }
};

class TallyLanes {
   public:
    TallyLanes() {
        lanes_[0].amp.assign(1, 1.0);
    }

    void rotate(int lo, int hi, const Unitary2 &u) {
        Lane &a = lanes_[lo];
        Lane &b = lanes_[hi];
        if (a.empty() && b.empty()) {
            return;
        }
        std::int64_t start = a.empty() ? b.base : (b.empty() ? a.base : std::min(a.base, b.base));
        std::int64_t stop = a.empty() ? b.end() : (b.empty() ? a.end() : std::max(a.end(), b.end()));
        std::size_t len = static_cast<std::size_t>(stop - start);
        scratch_a_.assign(len, Amplitude{});
        scratch_b_.assign(len, Amplitude{});
        for (std::size_t i = 0; i < len; ++i) {
            std::int64_t t = start + static_cast<std::int64_t>(i);
            Amplitude x = a.at(t);
            Amplitude y = b.at(t);
            scratch_a_[i] = u(0, 0) * x + u(0, 1) * y;
            scratch_b_[i] = u(1, 0) * x + u(1, 1) * y;
        }
        a.base = b.base = start;
        a.amp.swap(scratch_a_);
        b.amp.swap(scratch_b_);
    }

    void routine_rotation(double theta_prime) {
        Unitary2 u = rotation(theta_prime);
        for (int rest = 0; rest < 4; ++rest) {
            rotate(rest, 4 | rest, u);
        }
    }

    void switch_rotation(double theta) {
        Unitary2 u = rotation(theta);
        rotate(0b100, 0b110, u);
        rotate(0b101, 0b111, u);
    }

    void insertion(int x, std::uint64_t inc, ComputerAction action) {
        for (int q1 = 0; q1 < 2; ++q1) {
            int off = (q1 << 2) | 0b010;
            if (action == ComputerAction::Xor) {
                if (x == 1) {
                    std::swap(lanes_[off], lanes_[off | 1]);
                }
            } else {
                merge_into(lanes_[off | x], lanes_[off | (1 - x)]);
            }
            lanes_[off].base += static_cast<std::int64_t>(inc);
            lanes_[off | 1].base += static_cast<std::int64_t>(inc);
        }
    }

    // dst += src, src cleared.
    void merge_into(Lane &dst, Lane &src) {
        if (src.empty()) {
            return;
        }
        if (dst.empty()) {
            std::swap(dst, src);
            return;
        }
        std::int64_t start = std::min(dst.base, src.base);
        std::int64_t stop = std::max(dst.end(), src.end());
        std::vector<Amplitude> sum(static_cast<std::size_t>(stop - start));
        for (std::size_t i = 0; i < sum.size(); ++i) {
            std::int64_t t = start + static_cast<std::int64_t>(i);
            sum[i] = dst.at(t) + src.at(t);
        }
        dst.base = start;
        dst.amp.swap(sum);
        src = Lane{};
    }

    void phase_flip() {
        for (auto &a : lanes_[7].amp) {
            a = -a;
        }
    }

    void kill(Register reg) {
        for (int i = 0; i < 8; ++i) {
            if (BasisLabel::from_dense_index(i).bit(reg) == 1) {
                lanes_[i] = Lane{};
            }
        }
    }

    PureState to_state() const {
        PureState out;
        for (int i = 0; i < 8; ++i) {
            const Lane &lane = lanes_[i];
            for (std::size_t k = 0; k < lane.amp.size(); ++k) {
                if (lane.amp[k] != Amplitude{}) {
                    BasisLabel label = BasisLabel::from_dense_index(i);
                    label.tally = static_cast<std::uint64_t>(lane.base + static_cast<std::int64_t>(k));
                    out.add(label, lane.amp[k]);
                }
            }
        }
        return out;
    }

   private:
    std::array<Lane, 8> lanes_;
    std::vector<Amplitude> scratch_a_;
    std::vector<Amplitude> scratch_b_;
};

}  // namespace

TallyResult run_with_tally_dense(const ProtocolParams &p) {
    p.validate();
    if (p.tally == TallyMode::StageDependent) {
        throw std::invalid_argument("run_with_tally_dense: stage-dependent tally needs the sparse engine");
    }
    using K = ProtocolOp::Kind;
    TallyLanes lanes;
    for_each_op(p, ScheduleExtent::full(p), [&](const ProtocolOp &op) {
        switch (op.kind) {
            case K::RoutineRotation:
                lanes.routine_rotation(p.theta_prime());
                break;
            case K::SwitchRotation:
                lanes.switch_rotation(p.theta());
                break;
            case K::Insertion:
                lanes.insertion(
                    p.computer_output, tally_increment(p.tally, p.computer_output, op.stage), default_action(p.variant));
                break;
            case K::PhaseFlip:
                lanes.phase_flip();
                break;
            case K::MeasureOutput:
            case K::MeasureSwitch:
                lanes.kill(op.measured_register());
                break;
            case K::MeasureFinal:
                break;
        }
    });

    PureState s = lanes.to_state();
    TallyResult out;
    ProtocolResult &r = out.result;
    r.final_states[0] = project(s, Register::SubroutineSwitch, 0);
    r.final_states[1] = project(s, Register::SubroutineSwitch, 1);
    r.p_success_0 = r.final_states[0].norm2();
    r.p_success_1 = r.final_states[1].norm2();
    r.p_fail = 1.0 - r.p_success_0 - r.p_success_1;
    double success = r.p_success();
    for (int i = 0; i < 2; ++i) {
        for (const auto &[label, a] : r.final_states[i]) {
            out.tally_given_success_final[i][label.tally] += std::norm(a) / success;
            out.tally_given_success[label.tally] += std::norm(a) / success;
        }
    }
    return out;
}

}  // namespace cfq
