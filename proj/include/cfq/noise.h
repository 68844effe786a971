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

#ifndef CFQ_NOISE_H
#define CFQ_NOISE_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cfq/qstate.h"
#include "cfq/zeno.h"

namespace cfq {

template <typename Scalar>
using Operator8T = Eigen::Matrix<std::complex<Scalar>, 8, 8>;
using Operator8 = Operator8T<double>;

/// Density operator over the (q1,q2,q3) basis. Sub-normalized after
/// post-selection.
template <typename Scalar>
using DensityOpT = Operator8T<Scalar>;
using DensityOp = DensityOpT<double>;

/// Which labels the decoherent computer acts on.
///   OutputComponent  only |1 1 x>, the component the computer just wrote
///   SwitchOnSector   both |1 1 0> and |1 1 1> (default)
enum class DecoherenceScope { OutputComponent, SwitchOnSector };

std::string to_string(DecoherenceScope scope);
DecoherenceScope parse_scope(const std::string &text);

struct KrausPair {
    Operator8 k0;
    Operator8 k1;
};

/// K0 keeps the scoped labels with factor (1 - eps); K1 flips q3 on them
/// with factor sqrt(2 eps - eps^2). Throws std::invalid_argument for eps
/// outside [0, 1].
KrausPair kraus_pair(int x, double epsilon, DecoherenceScope scope = DecoherenceScope::SwitchOnSector);

/// max |K0^dag K0 + K1^dag K1 - I|.
double completeness_error(const KrausPair &k);

struct Branch {
    std::uint64_t env = 0;
    PureState state;
};

/// Hands out environment modes; each computer run gets a new one.
class EnvAllocator {
   public:
    std::uint64_t fresh() {
        return ++last_;
    }
    std::uint64_t last() const {
        return last_;
    }

   private:
    std::uint64_t last_ = 0;
};

/// Splits `branch` after an ideal insertion into a stay branch (same env)
/// and a flip branch (fresh env). Branches left with no terms are dropped.
std::vector<Branch> decohere_insertion(
    const Branch &branch, int x, double epsilon, EnvAllocator &envs,
    DecoherenceScope scope = DecoherenceScope::SwitchOnSector);

enum class Representation { Density, Ensemble };

std::string to_string(Representation rep);
Representation parse_representation(const std::string &text);

/// Below this P(m|x) the success record is rounding noise and the
/// conditionals are reported as 0.
constexpr double kNeverSucceeds = 1e-14;

struct NoisyResult {
    double p_m_given_x = 0;                   ///< P(m|x)
    std::array<double, 2> p_mi_given_m_x{};   ///< P(m_i|m,x), 0 when P(m|x) <= kNeverSucceeds
    std::array<double, 2> p_success_final{};  ///< P(m m_i|x)
    /// Probability that the k-th real measurement is the first to fail, in
    /// schedule order. Sums to 1 - P(m|x).
    std::vector<double> p_first_failure;
    Representation representation = Representation::Density;
    std::size_t peak_branches = 1;  ///< ensemble path only
};

/// 8x8 matrix of a unitary or projective protocol op (tally ignored).
Operator8 op_matrix(const ProtocolOp &op, const ProtocolParams &p);

DensityOp initial_density();

/// One protocol op on a density operator. Insertions are followed by the
/// decoherence channel; measurements project onto the success outcome.
DensityOp evolve(
    const DensityOp &rho, const ProtocolOp &op, const ProtocolParams &p,
    DecoherenceScope scope = DecoherenceScope::SwitchOnSector);

/// Exact post-selected run with the decoherent computer at every insertion.
/// Throws std::invalid_argument when a tally mode is requested.
NoisyResult run_noisy(
    const ProtocolParams &p, Representation rep = Representation::Density,
    DecoherenceScope scope = DecoherenceScope::SwitchOnSector);

/// Largest field difference between the two representations.
double crosscheck_representations(
    const ProtocolParams &p, DecoherenceScope scope = DecoherenceScope::SwitchOnSector);

}  // namespace cfq

#endif
