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


#ifndef CFQ_TWOQUBIT_H
#define CFQ_TWOQUBIT_H

#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cfq/qstate.h"

namespace cfq::twoqubit {

// Two-qubit register: qubit 1 is the computer switch, qubit 2 receives the
// computer output. Basis index = 2 q1 + q2.

template <typename Scalar>
using State4T = Eigen::Matrix<std::complex<Scalar>, 4, 1>;
template <typename Scalar>
using Gate4T = Eigen::Matrix<std::complex<Scalar>, 4, 4>;
using State4 = State4T<double>;
using Gate4 = Gate4T<double>;

inline int index(int q1, int q2) {
    return 2 * q1 + q2;
}

template <typename Scalar = double>
State4T<Scalar> ket(int q1, int q2) {
    State4T<Scalar> v = State4T<Scalar>::Zero();
    v(index(q1, q2)) = 1;
    return v;
}

/// pi/4 rotation of qubit 1 when qubit 2 is 0; identity when qubit 2 is 1.
template <typename Scalar = double>
Gate4T<Scalar> u_gate() {
    using std::sqrt;
    const Scalar s = Scalar(1) / sqrt(Scalar(2));
    Gate4T<Scalar> u = Gate4T<Scalar>::Zero();
    u(index(0, 0), index(0, 0)) = s;
    u(index(1, 0), index(0, 0)) = s;
    u(index(0, 0), index(1, 0)) = -s;
    u(index(1, 0), index(1, 0)) = s;
    u(index(0, 1), index(0, 1)) = 1;
    u(index(1, 1), index(1, 1)) = 1;
    return u;
}

/// Sets qubit 2 to x on the switch-on labels: CNOT for x = 1, identity for x = 0.
template <typename Scalar = double>
Gate4T<Scalar> computer_gate(int x) {
    Gate4T<Scalar> c = Gate4T<Scalar>::Identity();
    if (x == 1) {
        c(index(1, 0), index(1, 0)) = 0;
        c(index(1, 1), index(1, 1)) = 0;
        c(index(1, 1), index(1, 0)) = 1;
        c(index(1, 0), index(1, 1)) = 1;
    }
    return c;
}

/// Hadamard on qubit 2 when qubit 1 is 1.
template <typename Scalar = double>
Gate4T<Scalar> switched_hadamard() {
    using std::sqrt;
    const Scalar s = Scalar(1) / sqrt(Scalar(2));
    Gate4T<Scalar> h = Gate4T<Scalar>::Identity();
    h(index(1, 0), index(1, 0)) = s;
    h(index(1, 0), index(1, 1)) = s;
    h(index(1, 1), index(1, 0)) = s;
    h(index(1, 1), index(1, 1)) = -s;
    return h;
}

/// Sign change on |1>|1>.
template <typename Scalar = double>
Gate4T<Scalar> phase_flip() {
    Gate4T<Scalar> z = Gate4T<Scalar>::Identity();
    z(index(1, 1), index(1, 1)) = -1;
    return z;
}

/// Throws std::invalid_argument unless x is 0 or 1.
State4 run_protocol(int x);

/// Term of the expanded computer: basis label, tilde flag and the chain of
/// labels it passed through. Terms with different lineages never merge.
struct TaggedTerm {
    int q1 = 0;
    int q2 = 0;
    bool tilde = false;
    std::string lineage;
    Amplitude amplitude;
};

class TaggedState {
   public:
    void add(const TaggedTerm &term);
    const std::vector<TaggedTerm> &terms() const {
        return terms_;
    }

    /// Sum over lineages of the terms at (q1, q2) with the given tilde flag.
    Amplitude amplitude(int q1, int q2, bool tilde) const;
    std::size_t lineage_count(int q1, int q2, bool tilde) const;

    /// Forgets tags and lineages, summing amplitudes.
    State4 erase_tags() const;

    std::string str() const;

   private:
    std::map<std::tuple<int, int, bool, std::string>, std::size_t> slot_;
    std::vector<TaggedTerm> terms_;
};

/// U, Hadamard, pi sign change, Hadamard, U on |00>, tracking lineages. The
/// first Hadamard sets the tilde on every qubit-2 = 1 term it creates.
/// Only the output-1 expansion is defined; x = 0 throws std::invalid_argument.
TaggedState run_internal_expansion(int x);

enum class Projector { Identity, SwitchOff, SwitchOn, OutputOff, OutputOn };

std::string to_string(Projector proj);
Projector parse_projector(const std::string &text);
Gate4 projector_matrix(Projector proj);

/// Instants at which a weak measurement can sit in the expanded protocol.
enum class Placement { BeforeComputer, AfterFirstHadamard, AfterPhaseFlip, AfterComputer };

std::string to_string(Placement placement);
Placement parse_placement(const std::string &text);

struct WeakValueResult {
    Amplitude value;
    Amplitude overlap;  ///< <phi|psi>
};

/// w = <phi|P|psi>/<phi|psi> for the output-1 protocol, psi evolved forward
/// from |00> to the placement and phi = <00| evolved back from the end.
/// Throws std::domain_error on a vanishing overlap.
WeakValueResult weak_value_at_computer(Projector proj, Placement placement);

/// Counterfactuality of outcome |q1 q2> with qubit 1 as the on/off switch:
/// hypothetical projections of qubit 1 at the computer split the amplitude
/// into an off and an on history.
struct SwitchVerdict {
    bool counterfactual = false;
    bool single_all_f_history = false;
    bool single_computer_output = false;
    Amplitude off_amplitude;
    Amplitude on_amplitude;
    double other_output_probability = 0;
};

SwitchVerdict switch_counterfactuality(int q1, int q2, int x, double tol = 1e-12);

/// Rival reading with qubit 2 as the witness: the outcome is counterfactual
/// only if no tilded term reaches it.
bool tilde_free(const TaggedState &state, int q1, int q2, double tol = 1e-12);

}  // namespace cfq::twoqubit

#endif
