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

#include "rlt/sdp.h"

#include <gtest/gtest.h>

#include "rlt/errors.h"
#include "test_util.h"

namespace rlt {
namespace {

// X = [[x0, x1], [x1, x2]] >= 0 with objective 1/2 ||X - T||_F^2.
QuadraticSdp nearest_psd_problem(const RMatrix& t) {
    QuadraticSdp p;
    p.design = RMatrix::Identity(3, 3);
    p.target = RVector(3);
    p.target << t(0, 0), t(0, 1), t(1, 1);
    p.row_weights = RVector(3);
    p.row_weights << 1.0, 2.0, 1.0;
    LmiBlock block;
    block.constant = CMatrix::Zero(2, 2);
    CMatrix e0 = CMatrix::Zero(2, 2), e1 = CMatrix::Zero(2, 2), e2 = CMatrix::Zero(2, 2);
    e0(0, 0) = 1;
    e1(0, 1) = 1;
    e1(1, 0) = 1;
    e2(1, 1) = 1;
    block.coefficients = {e0, e1, e2};
    p.blocks.push_back(block);
    p.interior_point = RVector::Constant(3, 0.0);
    (*p.interior_point)(0) = 1.0;
    (*p.interior_point)(2) = 1.0;
    return p;
}

TEST(Sdp, NearestPsdMatrixMatchesEigenClipping) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        RMatrix t = testing::random_real(rng, 2, 2);
        t = 0.5 * (t + t.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<RMatrix> es(t);
        const RMatrix clipped = es.eigenvectors() *
                                es.eigenvalues().cwiseMax(0.0).asDiagonal() *
                                es.eigenvectors().transpose();
        const SdpSolution sol = solve_quadratic_sdp(nearest_psd_problem(t));
        EXPECT_EQ(sol.status, SdpStatus::kConverged);
        EXPECT_NEAR(sol.x(0), clipped(0, 0), 1e-7);
        EXPECT_NEAR(sol.x(1), clipped(0, 1), 1e-7);
        EXPECT_NEAR(sol.x(2), clipped(1, 1), 1e-7);
        ASSERT_EQ(sol.block_min_eig.size(), 1u);
        EXPECT_GE(sol.block_min_eig[0], -1e-12);
    }
}

TEST(Sdp, EqualityConstrainedLeastSquares) {
    std::mt19937_64 rng(32);
    QuadraticSdp p;
    p.design = testing::random_real(rng, 8, 5);
    p.target = testing::random_real(rng, 8, 1);
    p.row_weights = RVector::Ones(8);
    p.equality = testing::random_real(rng, 2, 5);
    p.equality_rhs = testing::random_real(rng, 2, 1);
    // KKT system oracle.
    RMatrix kkt = RMatrix::Zero(7, 7);
    kkt.topLeftCorner(5, 5) = p.design.transpose() * p.design;
    kkt.topRightCorner(5, 2) = p.equality.transpose();
    kkt.bottomLeftCorner(2, 5) = p.equality;
    RVector rhs(7);
    rhs << p.design.transpose() * p.target, p.equality_rhs;
    const RVector ref = kkt.fullPivLu().solve(rhs).head(5);
    SdpOptions opts;
    opts.proximal = 0.0;
    const SdpSolution sol = solve_quadratic_sdp(p, opts);
    EXPECT_LT((sol.x - ref).norm(), 1e-9);
    EXPECT_LT(sol.equality_residual, 1e-12);
}

TEST(Sdp, InactiveConstraintLeavesLeastSquaresSolution) {
    RMatrix t(2, 2);
    t << 2.0, 0.3, 0.3, 1.0;
    const SdpSolution sol = solve_quadratic_sdp(nearest_psd_problem(t));
    EXPECT_NEAR(sol.x(0), 2.0, 1e-8);
    EXPECT_NEAR(sol.x(1), 0.3, 1e-8);
    EXPECT_NEAR(sol.x(2), 1.0, 1e-8);
    EXPECT_NEAR(sol.objective, 0.0, 1e-12);
}

TEST(Sdp, InconsistentEqualitiesThrow) {
    QuadraticSdp p;
    p.design = RMatrix::Identity(2, 2);
    p.target = RVector::Zero(2);
    p.row_weights = RVector::Ones(2);
    p.equality = RMatrix(2, 2);
    p.equality << 1, 1, 2, 2;
    p.equality_rhs = RVector(2);
    p.equality_rhs << 1, 3;
    EXPECT_THROW(solve_quadratic_sdp(p), SolverError);
}

TEST(Sdp, MinEigenvalueOfAffineBlock) {
    LmiBlock block;
    block.constant = CMatrix::Identity(2, 2);
    CMatrix z = CMatrix::Zero(2, 2);
    z(0, 0) = 1;
    z(1, 1) = -1;
    block.coefficients = {z};
    RVector x(1);
    x << 3.0;
    EXPECT_NEAR(lmi_min_eigenvalue(block, x), -2.0, 1e-14);
}

}  // namespace
}  // namespace rlt
