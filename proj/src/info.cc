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

#include "cfq/info.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfq {

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("binary_entropy: probability outside [0, 1]");
    }
    return entropy_bits({p, 1.0 - p});
}

double entropy_bits(const std::vector<double> &weights) {
    double total = 0;
    for (double w : weights) {
        total += w;
    }
    double h = 0;
    for (double w : weights) {
        if (w > 0) {
            double p = w / total;
            h -= p * std::log2(p);
        }
    }
    return h;
}

double mutual_information(const std::vector<std::vector<double>> &joint) {
    std::vector<double> px;
    std::vector<double> py;
    std::vector<double> all;
    for (const auto &row : joint) {
        double sum = 0;
        for (std::size_t y = 0; y < row.size(); ++y) {
            if (py.size() <= y) {
                py.resize(y + 1, 0.0);
            }
            py[y] += row[y];
            sum += row[y];
            all.push_back(row[y]);
        }
        px.push_back(sum);
    }
    return entropy_bits(px) + entropy_bits(py) - entropy_bits(all);
}

std::string to_string(OutcomePartition partition) {
    switch (partition) {
        case OutcomePartition::ThreeWay:
            return "3way";
        case OutcomePartition::SuccessConditional:
            return "2way";
        case OutcomePartition::FullRecord:
            return "full";
    }
    return "?";
}

OutcomePartition parse_partition(const std::string &text) {
    if (text == "3way") {
        return OutcomePartition::ThreeWay;
    }
    if (text == "2way") {
        return OutcomePartition::SuccessConditional;
    }
    if (text == "full") {
        return OutcomePartition::FullRecord;
    }
    throw std::invalid_argument("unknown partition '" + text + "' (expected 3way|2way|full)");
}

std::vector<std::vector<double>> zeno_joint(
    const ProtocolParams &p, OutcomePartition partition, DecoherenceScope scope) {
    std::vector<std::vector<double>> joint(2);
    for (int x = 0; x < 2; ++x) {
        NoisyResult r = run_noisy(p.with_output(x), Representation::Density, scope);
        auto &row = joint[x];
        row = {0.5 * r.p_success_final[0], 0.5 * r.p_success_final[1]};
        if (partition == OutcomePartition::ThreeWay) {
            row.push_back(0.5 * (1.0 - r.p_m_given_x));
        } else if (partition == OutcomePartition::FullRecord) {
            for (double f : r.p_first_failure) {
                row.push_back(0.5 * f);
            }
        }
    }
    if (partition == OutcomePartition::SuccessConditional) {
        double total = joint[0][0] + joint[0][1] + joint[1][0] + joint[1][1];
        if (total <= kNeverSucceeds) {
            throw std::domain_error("zeno_joint: the protocol never succeeds");
        }
        for (auto &row : joint) {
            for (double &v : row) {
                v /= total;
            }
        }
    }
    return joint;
}

MIResult mutual_information_zeno(const ProtocolParams &p, OutcomePartition partition, DecoherenceScope scope) {
    MIResult r;
    r.mi_bits = mutual_information(zeno_joint(p, partition, scope));
    r.partition = partition;
    return r;
}

namespace {

// k log q with 0 log 0 = 0.
double xlog(double k, double log_q) {
    return k == 0 ? 0.0 : k * log_q;
}

}  // namespace

MIResult mutual_information_repeat(long runs, double epsilon) {
    if (runs <= 0) {
        throw std::invalid_argument("mutual_information_repeat: runs must be positive");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in [0, 1]");
    }
    const double q = epsilon * (2.0 - epsilon);
    const double log_q = std::log(q);
    const double log_keep = std::log1p(-q);
    const double n = static_cast<double>(runs);
    // I = sum_{x,k} P(x,k) log2(P(k|x)/P(k)), P(k) = (P(k|0)+P(k|1))/2.
    double mi = 0;
    for (long k = 0; k <= runs; ++k) {
        const double kk = static_cast<double>(k);
        const double log_choose = std::lgamma(n + 1) - std::lgamma(kk + 1) - std::lgamma(n - kk + 1);
        const double log_p[2] = {
            log_choose + xlog(kk, log_q) + xlog(n - kk, log_keep),
            log_choose + xlog(n - kk, log_q) + xlog(kk, log_keep),
        };
        for (int x = 0; x < 2; ++x) {
            if (std::isinf(log_p[x])) {
                continue;
            }
            const double gap = log_p[1 - x] - log_p[x];
            const double ratio_bits = std::isinf(gap) ? 1.0 : 1.0 - std::log1p(std::exp(gap)) / std::log(2.0);
            mi += 0.5 * std::exp(log_p[x]) * ratio_bits;
        }
    }
    MIResult r;
    r.mi_bits = std::clamp(mi, 0.0, 1.0);
    r.runs = runs;
    return r;
}

std::vector<PartitionMatch> rank_partitions(const ProtocolParams &p, double target, DecoherenceScope scope) {
    std::vector<PartitionMatch> out;
    for (OutcomePartition part :
         {OutcomePartition::ThreeWay, OutcomePartition::SuccessConditional, OutcomePartition::FullRecord}) {
        double mi = mutual_information_zeno(p, part, scope).mi_bits;
        out.push_back({part, mi, std::abs(mi - target)});
    }
    std::stable_sort(out.begin(), out.end(), [](const PartitionMatch &a, const PartitionMatch &b) {
        return a.deviation < b.deviation;
    });
    return out;
}

}  // namespace cfq
