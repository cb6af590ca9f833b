// Copyright 2026 The RLT Authors
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

#include "rlt/tomo.h"

#include <gtest/gtest.h>

#include "rlt/errors.h"
#include "test_util.h"

namespace rlt {
namespace {

using testing::kPi;

GateSet xy_gates() {
    const MatrixBasis basis = pauli_basis(1);
    return GateSet(basis, {{"X90", testing::rotation_generator("X", kPi / 2, basis)},
                           {"Y90", testing::rotation_generator("Y", kPi / 2, basis)},
                           {"I", RMatrix::Zero(4, 4)}});
}

// Physical error: small Hamiltonian term plus a full-rank dissipator.
Lindbladian physical_error(std::mt19937_64& rng, const MatrixBasis& basis, double size) {
    const int d = basis.dim();
    CMatrix h = testing::random_hermitian(rng, d);
    h *= size / h.norm();
    std::vector<CMatrix> jumps;
    for (int a = 1; a < basis.size(); ++a) {
        jumps.push_back(std::sqrt(size / basis.size()) * pauli_string(basis.label(a)));
    }
    return lindbladian(h, jumps, basis);
}

// Noiseless observations generated from the linear model itself.
std::vector<EacRecord> model_records(const GateSet& gates,
                                     const std::vector<std::vector<int>>& units,
                                     const std::vector<long long>& schedule,
                                     const std::vector<Lindbladian>& deltas) {
    std::vector<EacRecord> out;
    for (const auto& unit : units) {
        const AmplificationMaps maps = analyze_unit(gates, UnitSequence{unit});
        for (long long n : schedule) {
            EacRecord rec;
            rec.maps = maps;
            rec.n = n;
            rec.observation = predict_eac_generator(maps, deltas, n) -
                              static_cast<double>(n % maps.period) * maps.unit_ideal;
            out.push_back(std::move(rec));
        }
    }
    return out;
}

TEST(Qpt, ExactInversionWithoutSpamError) {
    std::mt19937_64 rng(41);
    for (int q : {1, 2}) {
        const MatrixBasis basis = pauli_basis(q);
        const SpamModel spam = qpt_circuit_set(q);
        const RMatrix g = expm(testing::random_lindbladian(rng, basis));
        const QptEstimate est = qpt_linear_inversion(channel_probabilities(g, spam), spam, basis);
        EXPECT_LT((est.g_hat - g).norm(), 1e-9);
        EXPECT_LT(est.tp_residual, 1e-9);
        EXPECT_GT(est.sensing_condition, 1.0);
    }
}

TEST(Qpt, SpamErrorBiasIsFirstOrder) {
    std::mt19937_64 rng(42);
    const MatrixBasis basis = pauli_basis(1);
    const SpamModel ideal = qpt_circuit_set(1);
    const RMatrix g = expm(testing::random_lindbladian(rng, basis));
    std::vector<double> bias;
    for (double s : {1e-2, 5e-3}) {
        const SpamModel noisy = apply_spam_error(ideal, {s, s}, 1);
        bias.push_back((qpt_linear_inversion(channel_probabilities(g, noisy), ideal, basis).g_hat -
                        g)
                           .norm());
    }
    EXPECT_GT(bias[0], 1e-3);
    EXPECT_LT(bias[0], 1e-1);
    EXPECT_NEAR(bias[0] / bias[1], 2.0, 0.1);
}

TEST(Qpt, ShotNoiseScaling) {
    std::mt19937_64 rng(43);
    const MatrixBasis basis = pauli_basis(1);
    const SpamModel spam = qpt_circuit_set(1);
    const RMatrix g = expm(testing::random_lindbladian(rng, basis));
    const ShotTable counts = sample_counts(channel_probabilities(g, spam), 1000000, 3);
    const QptEstimate est = qpt_linear_inversion(counts, spam, basis);
    EXPECT_EQ(est.shots, 1000000);
    EXPECT_LT((est.g_hat - g).norm(), 1e-2);
    EXPECT_GT((est.g_hat - g).norm(), 1e-5);
}

TEST(Qpt, RankDeficientDesignThrows) {
    SpamModel spam = qpt_circuit_set(1);
    spam.povms.resize(1);
    ProbabilityTable probs;
    probs.values.assign(4, std::vector<std::vector<double>>(1, {0.5, 0.5}));
    EXPECT_THROW(qpt_linear_inversion(probs, spam, pauli_basis(1)), SingularMatrixError);
}

TEST(Extract, ExactAndPerturbed) {
    std::mt19937_64 rng(44);
    const GateSet gates = xy_gates();
    const AmplificationMaps maps = analyze_unit(gates, UnitSequence{{0, 1}});
    for (long long r : {1LL, 2LL}) {
        const RMatrix target = static_cast<double>(r) * maps.unit_ideal;
        QptEstimate est;
        est.g_hat = expm(target);
        EXPECT_LT(extract_lindbladian(est, r, maps.unit_ideal).norm(), 1e-12);
        const RMatrix e = 1e-3 * testing::random_direction(rng, 4);
        est.g_hat = expm(RMatrix(target + e));
        EXPECT_LT((extract_lindbladian(est, r, maps.unit_ideal) - e).norm(), 1e-8);
    }
}

TEST(Extract, BranchBoundaryIsReported) {
    const GateSet gates = xy_gates();
    // Twice a quarter turn puts the eigenvalues at +-i pi.
    QptEstimate est;
    est.g_hat = expm(RMatrix(2.0 * gates[0].ideal));
    EXPECT_THROW(extract_lindbladian(est, 2, gates[0].ideal), BranchCutError);
}

TEST(Design, SingleGateUnitIsIdentity) {
    const GateSet gates = xy_gates();
    std::vector<EacRecord> recs(1);
    recs[0].maps = analyze_unit(gates, UnitSequence{{0}});
    recs[0].n = 1;
    recs[0].observation = RMatrix::Zero(4, 4);
    const FitProblem fp = assemble_design(gates, recs, {0});
    EXPECT_EQ(fp.design.rows(), 16);
    EXPECT_EQ(fp.design.cols(), 16);
    EXPECT_LT((fp.design - RMatrix::Identity(16, 16)).norm(), 1e-12);
    EXPECT_DOUBLE_EQ(fp.eac_weights[0], 1.0);
    EXPECT_THROW(assemble_design(gates, {}, {0}), std::invalid_argument);
}

TEST(Design, IdentityUnitPureAmplification) {
    const GateSet gates = xy_gates();
    std::vector<EacRecord> recs(2);
    for (int a = 0; a < 2; ++a) {
        recs[a].maps = analyze_unit(gates, UnitSequence{{2}});
        recs[a].n = 5 * (a + 1);
        recs[a].observation = RMatrix::Zero(4, 4);
    }
    const FitProblem fp = assemble_design(gates, recs, {2});
    EXPECT_LT((fp.design.bottomRows(16) - 2.0 * fp.design.topRows(16)).norm(), 1e-12);
    EXPECT_LT((fp.design.topRows(16) - 5.0 * RMatrix::Identity(16, 16)).norm(), 1e-12);
}

TEST(Design, StackingEnlargesColumnSpace) {
    const GateSet gates = xy_gates();
    const std::vector<Lindbladian> none(gates.size());
    const auto rank_of = [&](const std::vector<std::vector<int>>& units) {
        const auto recs = model_records(gates, units, {4, 5}, none);
        return analyze_identifiability(assemble_design(gates, recs, {0, 1})).rank;
    };
    const int rx = rank_of({{0}});
    const int ry = rank_of({{1}});
    const int rxy = rank_of({{0, 1}});
    const int all = rank_of({{0}, {1}, {0, 1}});
    EXPECT_GT(all, rx);
    EXPECT_GT(all, ry);
    EXPECT_GT(all, rxy);
}

TEST(Fit, NoiselessModelRecovery) {
    std::mt19937_64 rng(45);
    const GateSet gates = xy_gates();
    std::vector<Lindbladian> deltas(gates.size());
    deltas[0] = physical_error(rng, gates.basis(), 1e-3);
    deltas[1] = physical_error(rng, gates.basis(), 1e-3);
    const auto recs = model_records(gates, {{0}, {1}, {0, 1}}, {4, 5, 8, 16}, deltas);
    const FitProblem fp = assemble_design(gates, recs, {0, 1});
    const FitResult res = fit_constrained(fp);
    const RMatrix proj = identifiable_projector(fp);
    const RVector err = proj * (pack_deltas(fp, res.deltas) - pack_deltas(fp, {deltas[0], deltas[1]}));
    EXPECT_LT(err.norm(), 1e-7);
    for (const GateFitDiagnostics& g : res.gates) {
        EXPECT_LT(g.tp_residual, 1e-8);
        EXPECT_GE(g.cp_min_eig, -1e-8);
    }
    const FitResult plain = fit_unconstrained(fp);
    const RVector err_plain =
        proj * (pack_deltas(fp, plain.deltas) - pack_deltas(fp, {deltas[0], deltas[1]}));
    EXPECT_LT(err_plain.norm(), 1e-9);
}

TEST(Fit, CpViolatingDataLandsOnBoundary) {
    const GateSet gates = xy_gates();
    std::vector<Lindbladian> deltas(gates.size());
    deltas[2] = -1e-3 * dissipator_lindbladian({pauli_string("Z")}, gates.basis());
    const auto recs = model_records(gates, {{2}}, {1, 2, 4}, deltas);
    const FitProblem fp = assemble_design(gates, recs, {2});
    EXPECT_LT(lindblad_physicality(deltas[2], gates.basis()).cp_min_eig, -1e-4);
    const FitResult res = fit_constrained(fp);
    EXPECT_GE(res.gates[0].cp_min_eig, -1e-8);
    EXPECT_LT(res.gates[0].cp_min_eig, 1e-6);
    EXPECT_LT(res.gates[0].tp_residual, 1e-8);
}

TEST(Fit, ZeroObservationsGiveZero) {
    const GateSet gates = xy_gates();
    const auto recs = model_records(gates, {{0}, {1}, {0, 1}}, {4, 8}, {RMatrix(), RMatrix(), RMatrix()});
    const FitProblem fp = assemble_design(gates, recs, {0, 1});
    const FitResult res = fit_constrained(fp);
    EXPECT_LT((identifiable_projector(fp) * pack_deltas(fp, res.deltas)).norm(), 1e-7);
}

TEST(Fit, UnconstrainedAgreesWhenConstraintsInactive) {
    // A full-rank dissipator keeps the truth strictly inside the feasible set.
    std::mt19937_64 rng(46);
    const GateSet gates = xy_gates();
    std::vector<Lindbladian> deltas = {physical_error(rng, gates.basis(), 1e-3),
                                       physical_error(rng, gates.basis(), 1e-3), RMatrix()};
    const auto recs = model_records(gates, {{0}, {1}, {0, 1}}, {4, 8, 16}, deltas);
    const FitProblem fp = assemble_design(gates, recs, {0, 1});
    const RMatrix proj = identifiable_projector(fp);
    const RVector truth = pack_deltas(fp, {deltas[0], deltas[1]});
    const FitResult a = fit_constrained(fp);
    const FitResult b = fit_unconstrained(fp);
    EXPECT_LT((proj * (pack_deltas(fp, b.deltas) - truth)).norm(), 1e-9);
    EXPECT_LT((proj * (pack_deltas(fp, a.deltas) - pack_deltas(fp, b.deltas))).norm(), 1e-7);
}

TEST(Fit, RankDeficientSingleEacIsFlagged) {
    std::mt19937_64 rng(47);
    const GateSet gates = xy_gates();
    std::vector<Lindbladian> deltas(gates.size());
    deltas[0] = physical_error(rng, gates.basis(), 1e-3);
    const auto recs = model_records(gates, {{0}}, {4}, deltas);
    const FitProblem fp = assemble_design(gates, recs, {0});
    const FitResult res = fit_unconstrained(fp);
    EXPECT_FALSE(res.identifiability.full_rank());
    EXPECT_FALSE(res.identifiability.unidentifiable.empty());
    // Minimum-norm: no component along the kernel.
    const RVector x = pack_deltas(fp, res.deltas);
    EXPECT_LT((res.identifiability.kernel.transpose() * x).norm(), 1e-12);
}

}  // namespace
}  // namespace rlt
