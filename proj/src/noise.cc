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


#include "cfq/noise.h"

#include <cmath>
#include <stdexcept>

namespace cfq {

std::string to_string(DecoherenceScope scope) {
    return scope == DecoherenceScope::OutputComponent ? "output-component" : "switch-on-sector";
}

DecoherenceScope parse_scope(const std::string &text) {
    if (text == "output-component") {
        return DecoherenceScope::OutputComponent;
    }
    if (text == "switch-on-sector") {
        return DecoherenceScope::SwitchOnSector;
    }
    throw std::invalid_argument("unknown decoherence scope '" + text + "' (expected output-component|switch-on-sector)");
}

std::string to_string(Representation rep) {
    return rep == Representation::Ensemble ? "ensemble" : "density";
}

Representation parse_representation(const std::string &text) {
    if (text == "density") {
        return Representation::Density;
    }
    if (text == "ensemble") {
        return Representation::Ensemble;
    }
    throw std::invalid_argument("unknown representation '" + text + "' (expected density|ensemble)");
}

namespace {

void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in [0, 1]");
    }
}

double flip_amplitude(double epsilon) {
    return std::sqrt(2.0 * epsilon - epsilon * epsilon);
}

bool in_scope(const BasisLabel &label, int x, DecoherenceScope scope) {
    if (label.q1 != 1 || label.q2 != 1) {
        return false;
    }
    return scope == DecoherenceScope::SwitchOnSector || label.q3 == x;
}

}  // namespace

KrausPair kraus_pair(int x, double epsilon, DecoherenceScope scope) {
    check_epsilon(epsilon);
    KrausPair k{Operator8::Identity(), Operator8::Zero()};
    double s = flip_amplitude(epsilon);
    for (int i = 0; i < 8; ++i) {
        BasisLabel label = BasisLabel::from_dense_index(i);
        if (in_scope(label, x, scope)) {
            k.k0(i, i) = 1.0 - epsilon;
            k.k1(i ^ 1, i) = s;
        }
    }
    return k;
}

double completeness_error(const KrausPair &k) {
    Operator8 sum = k.k0.adjoint() * k.k0 + k.k1.adjoint() * k.k1;
    return (sum - Operator8::Identity()).cwiseAbs().maxCoeff();
}

std::vector<Branch> decohere_insertion(
    const Branch &branch, int x, double epsilon, EnvAllocator &envs, DecoherenceScope scope) {
    check_epsilon(epsilon);
    Branch stay{branch.env, {}};
    Branch flip{0, {}};
    double s = flip_amplitude(epsilon);
    for (const auto &[label, a] : branch.state) {
        if (in_scope(label, x, scope)) {
            stay.state.add(label, (1.0 - epsilon) * a);
            flip.state.add(label.with_bit(Register::ComputerOutput, 1 - label.q3), s * a);
        } else {
            stay.state.add(label, a);
        }
    }
    stay.state.prune();
    flip.state.prune();
    std::vector<Branch> out;
    if (!stay.state.empty()) {
        out.push_back(std::move(stay));
    }
    if (!flip.state.empty()) {
        flip.env = envs.fresh();
        out.push_back(std::move(flip));
    }
    return out;
}

Operator8 op_matrix(const ProtocolOp &op, const ProtocolParams &p) {
    ProtocolParams q = p;
    q.tally = TallyMode::None;
    Operator8 m = Operator8::Zero();
    for (int i = 0; i < 8; ++i) {
        m.col(i) = to_dense(apply_op(PureState::basis(BasisLabel::from_dense_index(i)), op, q));
    }
    return m;
}

DensityOp initial_density() {
    DensityOp rho = DensityOp::Zero();
    rho(0, 0) = 1.0;
    return rho;
}

DensityOp evolve(const DensityOp &rho, const ProtocolOp &op, const ProtocolParams &p, DecoherenceScope scope) {
    if (op.kind == ProtocolOp::Kind::MeasureFinal) {
        return rho;
    }
    Operator8 u = op_matrix(op, p);
    DensityOp out = u * rho * u.adjoint();
    if (op.kind == ProtocolOp::Kind::Insertion) {
        KrausPair k = kraus_pair(p.computer_output, p.epsilon, scope);
        out = k.k0 * out * k.k0.adjoint() + k.k1 * out * k.k1.adjoint();
    }
    return out;
}

namespace {

void check_no_tally(const ProtocolParams &p) {
    p.validate();
    if (p.tally != TallyMode::None) {
        throw std::invalid_argument("the decoherent computer does not support a tally register");
    }
}

void finish(NoisyResult &r) {
    r.p_m_given_x = r.p_success_final[0] + r.p_success_final[1];
    for (int i = 0; i < 2; ++i) {
        r.p_mi_given_m_x[i] = r.p_m_given_x > kNeverSucceeds ? r.p_success_final[i] / r.p_m_given_x : 0.0;
    }
}

NoisyResult run_density(const ProtocolParams &p, DecoherenceScope scope) {
    using K = ProtocolOp::Kind;
    const Operator8 routine = op_matrix({K::RoutineRotation}, p);
    const Operator8 sub = op_matrix({K::SwitchRotation}, p);
    const Operator8 insert = op_matrix({K::Insertion}, p);
    const Operator8 flip = op_matrix({K::PhaseFlip}, p);
    const Operator8 keep_output = op_matrix({K::MeasureOutput}, p);
    const Operator8 keep_switch = op_matrix({K::MeasureSwitch}, p);
    const KrausPair kraus = kraus_pair(p.computer_output, p.epsilon, scope);

    NoisyResult r;
    r.representation = Representation::Density;
    DensityOp rho = initial_density();
    auto conj = [&rho](const Operator8 &u) { rho = u * rho * u.adjoint(); };
    auto measure_success = [&](const Operator8 &proj) {
        double before = rho.trace().real();
        conj(proj);
        r.p_first_failure.push_back(before - rho.trace().real());
    };
    for_each_op(p, ScheduleExtent::full(p), [&](const ProtocolOp &op) {
        switch (op.kind) {
            case K::RoutineRotation:
                conj(routine);
                break;
            case K::SwitchRotation:
                conj(sub);
                break;
            case K::Insertion:
                conj(insert);
                rho = kraus.k0 * rho * kraus.k0.adjoint() + kraus.k1 * rho * kraus.k1.adjoint();
                break;
            case K::PhaseFlip:
                conj(flip);
                break;
            case K::MeasureOutput:
                measure_success(keep_output);
                break;
            case K::MeasureSwitch:
                measure_success(keep_switch);
                break;
            case K::MeasureFinal:
                break;
        }
    });
    for (int i = 0; i < 8; ++i) {
        r.p_success_final[i >> 2] += rho(i, i).real();
    }
    finish(r);
    return r;
}

double total_norm2(const std::vector<Branch> &branches) {
    double total = 0;
    for (const auto &b : branches) {
        total += b.state.norm2();
    }
    return total;
}

// Folds branches whose states are proportional into one with the summed weight.
void merge_proportional(std::vector<Branch> &branches) {
    std::vector<Branch> out;
    for (auto &b : branches) {
        double nb = b.state.norm2();
        bool merged = false;
        for (auto &a : out) {
            double na = a.state.norm2();
            double overlap = std::norm(inner(a.state, b.state));
            if (std::abs(overlap - na * nb) <= 1e-13 * na * nb) {
                a.state *= std::sqrt((na + nb) / na);
                merged = true;
                break;
            }
        }
        if (!merged) {
            out.push_back(std::move(b));
        }
    }
    branches = std::move(out);
}

// Replaces a branch set by at most 8 branches with the same reduced state.
// With M the 8 x B matrix of branch vectors, M^dag = Q R gives M M^dag = R^dag R.
void compress(std::vector<Branch> &branches, EnvAllocator &envs) {
    const Eigen::Index count = static_cast<Eigen::Index>(branches.size());
    Eigen::MatrixXcd m(8, count);
    for (Eigen::Index j = 0; j < count; ++j) {
        m.col(j) = to_dense(branches[j].state);
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m.adjoint());
    Eigen::MatrixXcd r = qr.matrixQR().topRows(8).triangularView<Eigen::Upper>();
    Eigen::MatrixXcd reduced = r.adjoint();
    branches.clear();
    for (Eigen::Index j = 0; j < reduced.cols(); ++j) {
        if (reduced.col(j).squaredNorm() == 0.0) {
            continue;
        }
        PureState s = from_dense(reduced.col(j));
        s.prune();
        branches.push_back({envs.fresh(), std::move(s)});
    }
}

constexpr std::size_t kCompressAbove = 8;

NoisyResult run_ensemble(const ProtocolParams &p, DecoherenceScope scope) {
    using K = ProtocolOp::Kind;
    NoisyResult r;
    r.representation = Representation::Ensemble;
    EnvAllocator envs;
    std::vector<Branch> branches{{0, PureState::basis(BasisLabel{})}};
    for_each_op(p, ScheduleExtent::full(p), [&](const ProtocolOp &op) {
        if (op.kind == K::MeasureFinal) {
            return;
        }
        if (op.kind == K::Insertion) {
            std::vector<Branch> next;
            for (const auto &b : branches) {
                Branch ran{b.env, apply_op(b.state, op, p)};
                for (auto &piece : decohere_insertion(ran, p.computer_output, p.epsilon, envs, scope)) {
                    next.push_back(std::move(piece));
                }
            }
            r.peak_branches = std::max(r.peak_branches, next.size());
            merge_proportional(next);
            if (next.size() > kCompressAbove) {
                compress(next, envs);
            }
            branches = std::move(next);
            return;
        }
        if (op.is_measurement()) {
            double before = total_norm2(branches);
            std::vector<Branch> next;
            for (const auto &b : branches) {
                PureState s = project(b.state, op.measured_register(), 0);
                if (!s.empty()) {
                    next.push_back({b.env, std::move(s)});
                }
            }
            branches = std::move(next);
            r.p_first_failure.push_back(before - total_norm2(branches));
            return;
        }
        for (auto &b : branches) {
            b.state = apply_op(b.state, op, p);
        }
    });
    for (const auto &b : branches) {
        for (int i = 0; i < 2; ++i) {
            r.p_success_final[i] += project(b.state, Register::SubroutineSwitch, i).norm2();
        }
    }
    finish(r);
    return r;
}

}  // namespace

NoisyResult run_noisy(const ProtocolParams &p, Representation rep, DecoherenceScope scope) {
    check_no_tally(p);
    return rep == Representation::Ensemble ? run_ensemble(p, scope) : run_density(p, scope);
}

double crosscheck_representations(const ProtocolParams &p, DecoherenceScope scope) {
    NoisyResult a = run_noisy(p, Representation::Density, scope);
    NoisyResult b = run_noisy(p, Representation::Ensemble, scope);
    double d = std::abs(a.p_m_given_x - b.p_m_given_x);
    for (int i = 0; i < 2; ++i) {
        d = std::max(d, std::abs(a.p_mi_given_m_x[i] - b.p_mi_given_m_x[i]));
        d = std::max(d, std::abs(a.p_success_final[i] - b.p_success_final[i]));
    }
    if (a.p_first_failure.size() != b.p_first_failure.size()) {
        throw std::logic_error("crosscheck_representations: schedules differ");
    }
    for (std::size_t k = 0; k < a.p_first_failure.size(); ++k) {
        d = std::max(d, std::abs(a.p_first_failure[k] - b.p_first_failure[k]));
    }
    return d;
}

}  // namespace cfq
