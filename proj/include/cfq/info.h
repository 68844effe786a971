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


#ifndef CFQ_INFO_H
#define CFQ_INFO_H

#include <string>
#include <vector>

#include "cfq/noise.h"
#include "cfq/zeno.h"

namespace cfq {

/// -p log2 p - (1-p) log2 (1-p). Throws std::invalid_argument outside [0, 1].
double binary_entropy(double p);

/// Shannon entropy in bits of a (possibly unnormalized) weight vector; zero
/// weights contribute nothing.
double entropy_bits(const std::vector<double> &weights);

/// I(X;Y) in bits of the joint table joint[x][y].
double mutual_information(const std::vector<std::vector<double>> &joint);

/// Outcome variable of the chained protocol.
///   ThreeWay            {succeed and read 0, succeed and read 1, fail}
///   SuccessConditional  {read 0, read 1} conditioned on success
///   FullRecord          success outcomes plus the position of the first failing measurement
enum class OutcomePartition { ThreeWay, SuccessConditional, FullRecord };

std::string to_string(OutcomePartition partition);
OutcomePartition parse_partition(const std::string &text);

struct MIResult {
    double mi_bits = 0;
    OutcomePartition partition = OutcomePartition::ThreeWay;
    long runs = 0;  ///< repeat mode only
};

/// Joint table P(x, y) under a uniform prior, built from run_noisy for x = 0, 1.
std::vector<std::vector<double>> zeno_joint(
    const ProtocolParams &p, OutcomePartition partition,
    DecoherenceScope scope = DecoherenceScope::SwitchOnSector);

MIResult mutual_information_zeno(
    const ProtocolParams &p, OutcomePartition partition = OutcomePartition::ThreeWay,
    DecoherenceScope scope = DecoherenceScope::SwitchOnSector);

/// `runs` independent computer runs, each reporting the wrong bit with
/// probability 2 eps - eps^2; the count of ones is sufficient. Summed in the
/// log domain. Throws std::invalid_argument when runs <= 0.
MIResult mutual_information_repeat(long runs, double epsilon);

struct PartitionMatch {
    OutcomePartition partition;
    double mi_bits;
    double deviation;  ///< |mi_bits - target|
};

/// Every documented partition evaluated at p, closest to `target` first.
std::vector<PartitionMatch> rank_partitions(
    const ProtocolParams &p, double target, DecoherenceScope scope = DecoherenceScope::SwitchOnSector);

}  // namespace cfq

#endif
