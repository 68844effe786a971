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

#ifndef CFQ_QSTATE_H
#define CFQ_QSTATE_H

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

namespace cfq {

using Amplitude = std::complex<double>;

/// The three protocol qubits. The ket |ijk> lists them in this order.
enum class Register : std::uint8_t {
    SubroutineSwitch = 0,  // q1
    ComputerSwitch = 1,    // q2
    ComputerOutput = 2,    // q3
};

std::string register_name(Register reg);

/// Subscript used in outcome notation such as 0_3 (output qubit measured 0).
inline int register_subscript(Register reg) {
    return static_cast<int>(reg) + 1;
}

/// Basis label of the protocol state space. `tally` is the optional fourth
/// register and `env` the environment mode; both stay 0 when unused.
struct BasisLabel {
    std::uint8_t q1 = 0;
    std::uint8_t q2 = 0;
    std::uint8_t q3 = 0;
    std::uint64_t tally = 0;
    std::uint64_t env = 0;

    int bit(Register reg) const;
    BasisLabel with_bit(Register reg, int value) const;

    /// Index of (q1,q2,q3) in the 8-dimensional dense basis, q1 most significant.
    int dense_index() const {
        return (q1 << 2) | (q2 << 1) | q3;
    }
    static BasisLabel from_dense_index(int index);

    /// Ket rendering, e.g. "|100>" or "|1001>" when the tally is shown.
    std::string ket(bool show_tally = false) const;

    auto operator<=>(const BasisLabel &) const = default;
};

template <typename Scalar>
using Unitary2T = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
using Unitary2 = Unitary2T<double>;

/// Real rotation (cos -sin; sin cos) in the computational basis.
template <typename Scalar>
Unitary2T<Scalar> rotation(Scalar theta) {
    using std::cos;
    using std::sin;
    Unitary2T<Scalar> u;
    u << cos(theta), -sin(theta), sin(theta), cos(theta);
    return u;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived> &u, double tol = 1e-12) {
    using Matrix = Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
    Matrix gram = u.adjoint() * u;
    return (gram - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

/// Sparse superposition over basis labels. May be sub-normalized after
/// post-selection. Iteration order follows label order, so every derived
/// output is deterministic.
class PureState {
   public:
    using Terms = std::map<BasisLabel, Amplitude>;

    PureState() = default;
    static PureState basis(const BasisLabel &label, Amplitude amplitude = 1.0);

    /// Adds `amplitude` to the term at `label`, creating it if absent.
    void add(const BasisLabel &label, Amplitude amplitude);
    Amplitude amplitude(const BasisLabel &label) const;

    double norm2() const;
    bool empty() const {
        return terms_.empty();
    }
    std::size_t size() const {
        return terms_.size();
    }
    Terms::const_iterator begin() const {
        return terms_.begin();
    }
    Terms::const_iterator end() const {
        return terms_.end();
    }
    const Terms &terms() const {
        return terms_;
    }

    /// Drops terms with |amplitude| <= threshold. The default removes exact zeros only.
    void prune(double threshold = 0.0);

    /// Largest |a - b| over the union of labels.
    double max_abs_diff(const PureState &other) const;

    PureState &operator+=(const PureState &other);
    PureState &operator*=(Amplitude factor);

    std::string str(bool show_tally = false) const;

   private:
    Terms terms_;
};

PureState operator+(PureState a, const PureState &b);
PureState operator*(Amplitude factor, PureState state);

using ControlPredicate = std::function<bool(const BasisLabel &)>;

/// Control that accepts every label.
inline bool always(const BasisLabel &) {
    return true;
}

/// Applies `u` to the target bit of every label accepted by `control`.
/// Throws std::invalid_argument if `u` is not unitary or if `control`
/// reads the target bit on any label present in `state`.
PureState apply_one_qubit(
    const PureState &state, Register target, const Unitary2 &u, const ControlPredicate &control = always);

struct Measurement {
    PureState state;     ///< un-renormalized projection
    double probability;  ///< projected norm2 / input norm2
};

/// Projects onto `outcome` of the target qubit. Throws std::domain_error on a zero-norm input.
Measurement measure(const PureState &state, Register target, int outcome);

/// Projection without the probability bookkeeping; allowed on empty states.
PureState project(const PureState &state, Register target, int outcome);

/// <a|b>, conjugate-linear in a.
Amplitude inner(const PureState &a, const PureState &b);

template <typename Scalar>
using DenseState = Eigen::Matrix<std::complex<Scalar>, 8, 1>;

/// Dense 8-amplitude view; throws if any label carries a tally or env index.
DenseState<double> to_dense(const PureState &state);
PureState from_dense(const DenseState<double> &dense);

}  // namespace cfq

#endif
