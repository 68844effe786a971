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


#include "cfq/twoqubit.h"

#include <array>
#include <sstream>
#include <stdexcept>

namespace cfq::twoqubit {

namespace {

void check_bit(int x) {
    if (x != 0 && x != 1) {
        throw std::invalid_argument("computer output must be 0 or 1");
    }
}

/// The output-1 protocol with the computer expanded.
struct Step {
    const char *name;
    Gate4 gate;
};

std::array<Step, 5> expanded_steps() {
    return {{
        {"U", u_gate()},
        {"H", switched_hadamard()},
        {"pi", phase_flip()},
        {"H", switched_hadamard()},
        {"U", u_gate()},
    }};
}

// Number of expanded steps applied before each placement.
std::size_t steps_before(Placement placement) {
    switch (placement) {
        case Placement::BeforeComputer:
            return 1;
        case Placement::AfterFirstHadamard:
            return 2;
        case Placement::AfterPhaseFlip:
            return 3;
        case Placement::AfterComputer:
            return 4;
    }
    return 0;
}

std::string label(int q1, int q2, bool tilde) {
    std::string s = std::to_string(q1) + std::to_string(q2);
    return tilde ? s + "~" : s;
}

}  // namespace

State4 run_protocol(int x) {
    check_bit(x);
    return u_gate() * computer_gate(x) * u_gate() * ket(0, 0);
}

void TaggedState::add(const TaggedTerm &term) {
    auto key = std::make_tuple(term.q1, term.q2, term.tilde, term.lineage);
    auto it = slot_.find(key);
    if (it != slot_.end()) {
        terms_[it->second].amplitude += term.amplitude;
        return;
    }
    slot_.emplace(key, terms_.size());
    terms_.push_back(term);
}

Amplitude TaggedState::amplitude(int q1, int q2, bool tilde) const {
    Amplitude sum{};
    for (const auto &t : terms_) {
        if (t.q1 == q1 && t.q2 == q2 && t.tilde == tilde) {
            sum += t.amplitude;
        }
    }
    return sum;
}

std::size_t TaggedState::lineage_count(int q1, int q2, bool tilde) const {
    std::size_t n = 0;
    for (const auto &t : terms_) {
        if (t.q1 == q1 && t.q2 == q2 && t.tilde == tilde) {
            ++n;
        }
    }
    return n;
}

State4 TaggedState::erase_tags() const {
    State4 v = State4::Zero();
    for (const auto &t : terms_) {
        v(index(t.q1, t.q2)) += t.amplitude;
    }
    return v;
}

std::string TaggedState::str() const {
    std::ostringstream out;
    out.precision(12);
    for (const auto &t : terms_) {
        out << label(t.q1, t.q2, t.tilde) << " " << t.amplitude.real();
        if (t.amplitude.imag() != 0) {
            out << (t.amplitude.imag() < 0 ? "-" : "+") << std::abs(t.amplitude.imag()) << "i";
        }
        out << " [" << t.lineage << "]\n";
    }
    return out.str();
}

TaggedState run_internal_expansion(int x) {
    check_bit(x);
    if (x == 0) {
        throw std::invalid_argument("the internal expansion is only defined for computer output 1");
    }
    TaggedState state;
    state.add({0, 0, false, "00", 1.0});
    std::size_t hadamards = 0;
    for (const Step &step : expanded_steps()) {
        bool first_hadamard = std::string(step.name) == "H" && hadamards++ == 0;
        TaggedState next;
        for (const auto &t : state.terms()) {
            for (int out = 0; out < 4; ++out) {
                Amplitude g = step.gate(out, index(t.q1, t.q2));
                if (g == Amplitude{}) {
                    continue;
                }
                int q1 = out >> 1;
                int q2 = out & 1;
                bool tilde = t.tilde || (first_hadamard && q2 == 1);
                next.add({q1, q2, tilde, t.lineage + ">" + step.name + ">" + label(q1, q2, tilde), g * t.amplitude});
            }
        }
        state = std::move(next);
    }
    return state;
}

std::string to_string(Projector proj) {
    switch (proj) {
        case Projector::Identity:
            return "identity";
        case Projector::SwitchOff:
            return "switch-off";
        case Projector::SwitchOn:
            return "switch-on";
        case Projector::OutputOff:
            return "output-off";
        case Projector::OutputOn:
            return "output-on";
    }
    return "?";
}

Projector parse_projector(const std::string &text) {
    for (Projector p :
         {Projector::Identity, Projector::SwitchOff, Projector::SwitchOn, Projector::OutputOff, Projector::OutputOn}) {
        if (to_string(p) == text) {
            return p;
        }
    }
    throw std::invalid_argument(
        "unknown projector '" + text + "' (expected identity|switch-off|switch-on|output-off|output-on)");
}

Gate4 projector_matrix(Projector proj) {
    Gate4 m = Gate4::Zero();
    for (int q1 = 0; q1 < 2; ++q1) {
        for (int q2 = 0; q2 < 2; ++q2) {
            bool keep = proj == Projector::Identity || (proj == Projector::SwitchOff && q1 == 0) ||
                        (proj == Projector::SwitchOn && q1 == 1) || (proj == Projector::OutputOff && q2 == 0) ||
                        (proj == Projector::OutputOn && q2 == 1);
            m(index(q1, q2), index(q1, q2)) = keep ? 1.0 : 0.0;
        }
    }
    return m;
}

std::string to_string(Placement placement) {
    switch (placement) {
        case Placement::BeforeComputer:
            return "before-computer";
        case Placement::AfterFirstHadamard:
            return "after-first-hadamard";
        case Placement::AfterPhaseFlip:
            return "after-phase-flip";
        case Placement::AfterComputer:
            return "after-computer";
    }
    return "?";
}

Placement parse_placement(const std::string &text) {
    for (Placement p : {Placement::BeforeComputer, Placement::AfterFirstHadamard, Placement::AfterPhaseFlip,
                        Placement::AfterComputer}) {
        if (to_string(p) == text) {
            return p;
        }
    }
    throw std::invalid_argument(
        "unknown placement '" + text +
        "' (expected before-computer|after-first-hadamard|after-phase-flip|after-computer)");
}

WeakValueResult weak_value_at_computer(Projector proj, Placement placement) {
    auto steps = expanded_steps();
    std::size_t cut = steps_before(placement);
    State4 psi = ket(0, 0);
    for (std::size_t i = 0; i < cut; ++i) {
        psi = steps[i].gate * psi;
    }
    State4 phi = ket(0, 0);
    for (std::size_t i = steps.size(); i-- > cut;) {
        phi = steps[i].gate.adjoint() * phi;
    }
    WeakValueResult r;
    r.overlap = phi.dot(psi);
    if (std::abs(r.overlap) < 1e-14) {
        throw std::domain_error("weak value undefined: post-selection overlap vanishes");
    }
    r.value = phi.dot(projector_matrix(proj) * psi) / r.overlap;
    return r;
}

SwitchVerdict switch_counterfactuality(int q1, int q2, int x, double tol) {
    check_bit(q1);
    check_bit(q2);
    check_bit(x);
    SwitchVerdict v;
    const State4 before = u_gate() * ket(0, 0);
    const State4 target = ket(q1, q2);
    for (int on = 0; on < 2; ++on) {
        Gate4 p = projector_matrix(on ? Projector::SwitchOn : Projector::SwitchOff);
        Amplitude a = target.dot(u_gate() * computer_gate(x) * p * before);
        (on ? v.on_amplitude : v.off_amplitude) = a;
    }
    v.single_all_f_history = std::abs(v.off_amplitude) > tol && std::abs(v.on_amplitude) <= tol;
    v.other_output_probability = std::norm(target.dot(run_protocol(1 - x)));
    v.single_computer_output = v.other_output_probability <= tol;
    v.counterfactual = v.single_all_f_history && v.single_computer_output;
    return v;
}

bool tilde_free(const TaggedState &state, int q1, int q2, double tol) {
    for (const auto &t : state.terms()) {
        if (t.tilde && t.q1 == q1 && t.q2 == q2 && std::abs(t.amplitude) > tol) {
            return false;
        }
    }
    return true;
}

}  // namespace cfq::twoqubit
