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

#include "cfq/qstate.h"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace cfq {

std::string register_name(Register reg) {
    switch (reg) {
        case Register::SubroutineSwitch:
            return "subroutine-switch";
        case Register::ComputerSwitch:
            return "computer-switch";
        case Register::ComputerOutput:
            return "computer-output";
    }
    return "?";
}

int BasisLabel::bit(Register reg) const {
    switch (reg) {
        case Register::SubroutineSwitch:
            return q1;
        case Register::ComputerSwitch:
            return q2;
        case Register::ComputerOutput:
            return q3;
    }
    return 0;
}

BasisLabel BasisLabel::with_bit(Register reg, int value) const {
    BasisLabel out = *this;
    auto v = static_cast<std::uint8_t>(value & 1);
    switch (reg) {
        case Register::SubroutineSwitch:
            out.q1 = v;
            break;
        case Register::ComputerSwitch:
            out.q2 = v;
            break;
        case Register::ComputerOutput:
            out.q3 = v;
            break;
    }
    return out;
}

BasisLabel BasisLabel::from_dense_index(int index) {
    BasisLabel out;
    out.q1 = static_cast<std::uint8_t>((index >> 2) & 1);
    out.q2 = static_cast<std::uint8_t>((index >> 1) & 1);
    out.q3 = static_cast<std::uint8_t>(index & 1);
    return out;
}

std::string BasisLabel::ket(bool show_tally) const {
    std::ostringstream out;
    out << '|' << int(q1) << int(q2) << int(q3);
    if (show_tally) {
        out << tally;
    }
    if (env != 0) {
        out << ";e" << env;
    }
    out << '>';
    return out.str();
}

PureState PureState::basis(const BasisLabel &label, Amplitude amplitude) {
    PureState s;
    s.terms_.emplace(label, amplitude);
    return s;
}

void PureState::add(const BasisLabel &label, Amplitude amplitude) {
    auto [it, inserted] = terms_.emplace(label, amplitude);
    if (!inserted) {
        it->second += amplitude;
    }
}

Amplitude PureState::amplitude(const BasisLabel &label) const {
    auto it = terms_.find(label);
    return it == terms_.end() ? Amplitude{} : it->second;
}

double PureState::norm2() const {
    double total = 0;
    for (const auto &[label, a] : terms_) {
        total += std::norm(a);
    }
    return total;
}

void PureState::prune(double threshold) {
    std::erase_if(terms_, [threshold](const auto &kv) { return std::abs(kv.second) <= threshold; });
}

double PureState::max_abs_diff(const PureState &other) const {
    double worst = 0;
    for (const auto &[label, a] : terms_) {
        worst = std::max(worst, std::abs(a - other.amplitude(label)));
    }
    for (const auto &[label, b] : other.terms_) {
        if (!terms_.contains(label)) {
            worst = std::max(worst, std::abs(b));
        }
    }
    return worst;
}

PureState &PureState::operator+=(const PureState &other) {
    for (const auto &[label, a] : other.terms_) {
        add(label, a);
    }
    return *this;
}

PureState &PureState::operator*=(Amplitude factor) {
    for (auto &[label, a] : terms_) {
        a *= factor;
    }
    return *this;
}

std::string PureState::str(bool show_tally) const {
    std::ostringstream out;
    out << std::setprecision(6);
    bool first = true;
    for (const auto &[label, a] : terms_) {
        if (!first) {
            out << " + ";
        }
        first = false;
        if (a.imag() == 0) {
            out << a.real();
        } else {
            out << '(' << a.real() << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i)";
        }
        out << label.ket(show_tally);
    }
    if (first) {
        out << '0';
    }
    return out.str();
}

PureState operator+(PureState a, const PureState &b) {
    a += b;
    return a;
}

PureState operator*(Amplitude factor, PureState state) {
    state *= factor;
    return state;
}

PureState apply_one_qubit(const PureState &state, Register target, const Unitary2 &u, const ControlPredicate &control) {
    if (!is_unitary(u)) {
        throw std::invalid_argument("apply_one_qubit: matrix is not unitary");
    }
    PureState out;
    for (const auto &[label, a] : state) {
        bool active = control(label);
        if (active != control(label.with_bit(target, 1 - label.bit(target)))) {
            throw std::invalid_argument(
                "apply_one_qubit: control predicate depends on the target register " + register_name(target));
        }
        if (!active) {
            out.add(label, a);
            continue;
        }
        int b = label.bit(target);
        for (int nb = 0; nb < 2; ++nb) {
            Amplitude coeff = u(nb, b);
            if (coeff != Amplitude{}) {
                out.add(label.with_bit(target, nb), coeff * a);
            }
        }
    }
    return out;
}

PureState project(const PureState &state, Register target, int outcome) {
    PureState out;
    for (const auto &[label, a] : state) {
        if (label.bit(target) == outcome) {
            out.add(label, a);
        }
    }
    return out;
}

Measurement measure(const PureState &state, Register target, int outcome) {
    double total = state.norm2();
    if (total <= 0) {
        throw std::domain_error("measure: input state has zero norm");
    }
    PureState projected = project(state, target, outcome);
    double p = projected.norm2() / total;
    return {std::move(projected), p};
}

Amplitude inner(const PureState &a, const PureState &b) {
    Amplitude total{};
    // Walk the smaller map, look up in the larger.
    const PureState &small = a.size() <= b.size() ? a : b;
    const PureState &large = a.size() <= b.size() ? b : a;
    bool small_is_a = &small == &a;
    for (const auto &[label, x] : small) {
        Amplitude y = large.amplitude(label);
        total += small_is_a ? std::conj(x) * y : std::conj(y) * x;
    }
    return total;
}

DenseState<double> to_dense(const PureState &state) {
    DenseState<double> out = DenseState<double>::Zero();
    for (const auto &[label, a] : state) {
        if (label.tally != 0 || label.env != 0) {
            throw std::invalid_argument("to_dense: state carries tally or environment labels");
        }
        out(label.dense_index()) += a;
    }
    return out;
}

PureState from_dense(const DenseState<double> &dense) {
    PureState out;
    for (int i = 0; i < 8; ++i) {
        if (dense(i) != Amplitude{}) {
            out.add(BasisLabel::from_dense_index(i), dense(i));
        }
    }
    return out;
}

}  // namespace cfq
