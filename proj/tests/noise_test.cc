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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

namespace cfq {
namespace {

BasisLabel ket(int q1, int q2, int q3, std::uint64_t env = 0) {
    BasisLabel l;
    l.q1 = static_cast<std::uint8_t>(q1);
    l.q2 = static_cast<std::uint8_t>(q2);
    l.q3 = static_cast<std::uint8_t>(q3);
    l.env = env;
    return l;
}

ProtocolParams params(int n, int n_prime, int x, double eps, Variant v = Variant::Modified) {
    ProtocolParams p;
    p.n = n;
    p.n_prime = n_prime;
    p.computer_output = x;
    p.epsilon = eps;
    p.variant = v;
    return p;
}

int idx(int q1, int q2, int q3) {
    return ket(q1, q2, q3).dense_index();
}

TEST(Decohere, NoiselessKeepsOneBranch) {
    EnvAllocator envs;
    Branch b{0, PureState::basis(ket(1, 1, 1), 0.5)};
    auto out = decohere_insertion(b, 1, 0.0, envs);
    ASSERT_EQ(out.size(), 1U);
    EXPECT_EQ(out[0].env, 0U);
    EXPECT_LT(out[0].state.max_abs_diff(b.state), 1e-15);
}

TEST(Decohere, FullNoiseFlipsIntoAFreshEnvironment) {
    EnvAllocator envs;
    const double a = 0.7;
    auto out = decohere_insertion({0, PureState::basis(ket(1, 1, 0), a)}, 0, 1.0, envs);
    ASSERT_EQ(out.size(), 1U);
    EXPECT_EQ(out[0].env, envs.last());
    EXPECT_NE(out[0].env, 0U);
    EXPECT_NEAR(std::abs(out[0].state.amplitude(ket(1, 1, 1)) - a), 0.0, 1e-15);
}

TEST(Decohere, PartialNoiseSplitsTheBranch) {
    EnvAllocator envs;
    const double a = 0.7;
    auto out = decohere_insertion({0, PureState::basis(ket(1, 1, 1), a)}, 1, 0.2, envs);
    ASSERT_EQ(out.size(), 2U);
    EXPECT_EQ(out[0].env, 0U);
    EXPECT_NEAR(std::abs(out[0].state.amplitude(ket(1, 1, 1)) - 0.8 * a), 0.0, 1e-15);
    EXPECT_NE(out[1].env, 0U);
    EXPECT_NEAR(std::abs(out[1].state.amplitude(ket(1, 1, 0)) - 0.6 * a), 0.0, 1e-15);
}

TEST(Kraus, NoiselessPair) {
    KrausPair k = kraus_pair(1, 0.0);
    EXPECT_LT((k.k0 - Operator8::Identity()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(k.k1.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Kraus, MatrixElements) {
    KrausPair k = kraus_pair(1, 0.2);
    EXPECT_NEAR(std::abs(k.k0(idx(1, 1, 1), idx(1, 1, 1)) - 0.8), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(k.k1(idx(1, 1, 0), idx(1, 1, 1)) - 0.6), 0.0, 1e-15);
}

TEST(Kraus, Completeness) {
    for (auto scope : {DecoherenceScope::SwitchOnSector, DecoherenceScope::OutputComponent}) {
        for (int x : {0, 1}) {
            for (double eps : {0.0, 0.2, 0.5, 0.7, 1.0}) {
                EXPECT_LT(completeness_error(kraus_pair(x, eps, scope)), 1e-14);
            }
        }
    }
}

TEST(Kraus, OutputComponentOnlyTouchesTheWrittenLabel) {
    KrausPair k = kraus_pair(1, 0.2, DecoherenceScope::OutputComponent);
    EXPECT_NEAR(std::abs(k.k0(idx(1, 1, 0), idx(1, 1, 0)) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(k.k0(idx(1, 1, 1), idx(1, 1, 1)) - 0.8), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(k.k1(idx(1, 1, 1), idx(1, 1, 0))), 0.0, 1e-15);
}

TEST(Kraus, RejectsOutOfRangeStrength) {
    EXPECT_THROW(kraus_pair(0, -0.1), std::invalid_argument);
    EXPECT_THROW(kraus_pair(0, 1.1), std::invalid_argument);
}

TEST(OpMatrix, UnitaryOpsAreUnitary) {
    for (Variant v : {Variant::Standard, Variant::Modified}) {
        for (int x : {0, 1}) {
            ProtocolParams p = params(3, 4, x, 0.0, v);
            for (const ProtocolOp &op : schedule(p, ScheduleExtent::full(p))) {
                bool setting = op.kind == ProtocolOp::Kind::Insertion && v == Variant::Standard;
                if (!op.is_measurement() && !setting) {
                    EXPECT_TRUE(is_unitary(op_matrix(op, p), 1e-12));
                }
            }
        }
    }
}

TEST(OpMatrix, SettingInsertionIsAnIsometryOnAClearOutput) {
    for (int x : {0, 1}) {
        ProtocolParams p = params(3, 4, x, 0.0, Variant::Standard);
        Operator8 m = op_matrix({ProtocolOp::Kind::Insertion}, p);
        Operator8 clear = Operator8::Zero();
        for (int i = 0; i < 8; ++i) {
            if (BasisLabel::from_dense_index(i).q3 == 0) {
                clear(i, i) = 1;
            }
        }
        Operator8 gram = clear * m.adjoint() * m * clear;
        EXPECT_LT((gram - clear).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(RunNoisy, NoiselessMatchesIdeal) {
    for (Variant v : {Variant::Standard, Variant::Modified}) {
        for (int x : {0, 1}) {
            ProtocolParams p = params(4, 3, x, 0.0, v);
            ProtocolResult ideal = run_ideal(p);
            for (auto rep : {Representation::Density, Representation::Ensemble}) {
                NoisyResult r = run_noisy(p, rep);
                EXPECT_NEAR(r.p_success_final[0], ideal.p_success_0, 1e-12);
                EXPECT_NEAR(r.p_success_final[1], ideal.p_success_1, 1e-12);
                EXPECT_NEAR(r.p_m_given_x, ideal.p_success_0 + ideal.p_success_1, 1e-12);
            }
        }
    }
}

TEST(RunNoisy, LongRoutineRow) {
    NoisyResult r0 = run_noisy(params(700, 70, 0, 0.2));
    NoisyResult r1 = run_noisy(params(700, 70, 1, 0.2));
    EXPECT_NEAR(r0.p_m_given_x, 0.609, 2e-3);
    EXPECT_NEAR(r0.p_mi_given_m_x[0], 0.040, 2e-3);
    EXPECT_NEAR(r1.p_m_given_x, 0.973, 2e-3);
    EXPECT_NEAR(r1.p_mi_given_m_x[1], 0.9999, 2e-3);
}

TEST(RunNoisy, ShortSubroutineConditionals) {
    EXPECT_NEAR(run_noisy(params(40, 70, 0, 0.2)).p_mi_given_m_x[0], 0.975, 2e-3);
    EXPECT_NEAR(run_noisy(params(40, 70, 1, 0.2)).p_mi_given_m_x[1], 0.969, 2e-3);
}

TEST(RunNoisy, FirstFailureAccountsForTheRest) {
    for (int x : {0, 1}) {
        NoisyResult r = run_noisy(params(3, 3, x, 0.3));
        double failed = 0.0;
        for (double f : r.p_first_failure) {
            EXPECT_GE(f, -1e-15);
            failed += f;
        }
        EXPECT_NEAR(failed + r.p_m_given_x, 1.0, 1e-12);
        EXPECT_NEAR(r.p_mi_given_m_x[0] + r.p_mi_given_m_x[1], 1.0, 1e-12);
    }
}

TEST(RunNoisy, DecoherenceDegradesOutputOne) {
    double clean = run_noisy(params(40, 70, 1, 0.0)).p_mi_given_m_x[1];
    double noisy = run_noisy(params(40, 70, 1, 0.2)).p_mi_given_m_x[1];
    EXPECT_LT(noisy, clean);
}

TEST(RunNoisy, RejectsTally) {
    ProtocolParams p = params(2, 2, 0, 0.2);
    p.tally = TallyMode::AllRuns;
    EXPECT_THROW(run_noisy(p), std::invalid_argument);
}

TEST(RunNoisy, ParseNames) {
    EXPECT_EQ(parse_scope("output-component"), DecoherenceScope::OutputComponent);
    EXPECT_EQ(parse_representation("ensemble"), Representation::Ensemble);
    EXPECT_THROW(parse_scope("x"), std::invalid_argument);
    EXPECT_THROW(parse_representation("x"), std::invalid_argument);
}

TEST(Crosscheck, RepresentationsAgreeOnSmallProtocols) {
    for (Variant v : {Variant::Standard, Variant::Modified}) {
        for (int n = 1; n <= 5; ++n) {
            for (int np = 1; np <= 5; ++np) {
                for (double eps : {0.0, 0.2, 0.5}) {
                    for (int x : {0, 1}) {
                        EXPECT_LT(crosscheck_representations(params(n, np, x, eps, v)), 1e-9)
                            << n << " " << np << " " << eps << " " << x;
                    }
                }
            }
        }
    }
}

TEST(Crosscheck, OutputComponentScopeAgreesToo) {
    EXPECT_LT(crosscheck_representations(params(3, 3, 1, 0.2), DecoherenceScope::OutputComponent), 1e-9);
}

TEST(Crosscheck, SuccessProbabilityAcrossRepresentations) {
    ProtocolParams p = params(2, 2, 1, 0.2);
    EXPECT_NEAR(
        run_noisy(p, Representation::Density).p_m_given_x, run_noisy(p, Representation::Ensemble).p_m_given_x, 1e-12);
}

TEST(Density, TraceIsPreservedAcrossAStep) {
    ProtocolParams p = params(3, 2, 1, 0.4);
    DensityOp rho = initial_density();
    for (const ProtocolOp &op : schedule(p, ScheduleExtent::full(p))) {
        if (op.is_measurement()) {
            break;
        }
        rho = evolve(rho, op, p);
        EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    }
}

TEST(Density, StaysPositiveAndHermitian) {
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> size(1, 6);
    std::uniform_real_distribution<double> strength(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        ProtocolParams p = params(size(rng), size(rng), trial % 2, strength(rng), trial % 4 < 2 ? Variant::Modified : Variant::Standard);
        DensityOp rho = initial_density();
        for (const ProtocolOp &op : schedule(p, ScheduleExtent::full(p))) {
            rho = evolve(rho, op, p);
            EXPECT_LT((rho - rho.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
            Eigen::SelfAdjointEigenSolver<DensityOp> es(rho);
            EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
            EXPECT_LE(rho.trace().real(), 1.0 + 1e-10);
        }
    }
}

TEST(Ensemble, BranchWeightsNeverExceedOne) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> strength(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        NoisyResult r = run_noisy(params(4, 4, trial % 2, strength(rng)), Representation::Ensemble);
        EXPECT_LE(r.p_m_given_x, 1.0 + 1e-10);
        EXPECT_LE(r.p_success_final[0] + r.p_success_final[1], 1.0 + 1e-10);
        EXPECT_GE(r.peak_branches, 1U);
    }
}

}  // namespace
}  // namespace cfq
