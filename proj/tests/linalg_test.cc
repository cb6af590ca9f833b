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

#include "rlt/linalg.h"

#include <gtest/gtest.h>

#include "rlt/errors.h"
#include "test_util.h"

namespace rlt {
namespace {

using testing::kPi;

// Independent oracle: scaled Taylor series followed by repeated squaring.
CMatrix taylor_expm(const CMatrix& a) {
    int squarings = 0;
    double norm = a.norm();
    while (norm > 0.25) {
        norm /= 2.0;
        ++squarings;
    }
    const CMatrix scaled = a / std::pow(2.0, squarings);
    CMatrix term = CMatrix::Identity(a.rows(), a.cols());
    CMatrix sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) {
        sum = sum * sum;
    }
    return sum;
}

TEST(Expm, MatchesTaylorOracle) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const CMatrix a = testing::random_complex(rng, 5, 5);
        const CMatrix ref = taylor_expm(a);
        EXPECT_LT((expm(a) - ref).norm(), 1e-11 * ref.norm());
    }
}

TEST(Expm, HermitianEigenOracle) {
    std::mt19937_64 rng(12);
    const CMatrix h = testing::random_hermitian(rng, 4);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const CVector phases = (Complex(0, 1) * es.eigenvalues().cast<Complex>()).array().exp();
    const CMatrix ref = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    EXPECT_LT((expm(CMatrix(Complex(0, 1) * h)) - ref).norm(), 1e-12);
}

TEST(Expm, RealOverloadStaysReal) {
    std::mt19937_64 rng(13);
    const RMatrix a = testing::random_real(rng, 4, 4);
    EXPECT_LT((expm(a).cast<Complex>() - expm(CMatrix(a.cast<Complex>()))).norm(), 1e-12);
}

TEST(Logm, InvertsExpmOnPrincipalStrip) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        CMatrix a = testing::random_complex(rng, 4, 4);
        a *= 1.5 / a.norm();
        EXPECT_LT((logm_principal(expm(a)) - a).norm(), 1e-10);
    }
}

TEST(Logm, PositiveDefiniteEigenOracle) {
    std::mt19937_64 rng(15);
    const CMatrix b = testing::random_complex(rng, 4, 4);
    const CMatrix p = b * b.adjoint() + CMatrix::Identity(4, 4);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(p);
    const CMatrix ref = es.eigenvectors() *
                        es.eigenvalues().array().log().matrix().cast<Complex>().asDiagonal() *
                        es.eigenvectors().adjoint();
    EXPECT_LT((logm_principal(p) - ref).norm(), 1e-10);
}

TEST(Logm, BranchCutIsReported) {
    CMatrix g = CMatrix::Identity(2, 2);
    g(0, 0) = -1.0;
    EXPECT_THROW(logm_principal(g), BranchCutError);
    // A 180 degree rotation has eigenvalue -1 in the Pauli transfer matrix.
    const MatrixBasis basis = pauli_basis(1);
    const RMatrix gx = expm(testing::rotation_generator("X", kPi, basis));
    EXPECT_THROW(logm_principal_real(gx), BranchCutError);
}

TEST(Logm, SingularIsReported) {
    CMatrix g = CMatrix::Identity(2, 2);
    g(0, 0) = 0.0;
    EXPECT_THROW(logm_principal(g), SingularMatrixError);
}

TEST(Logm, RealResultForRealInput) {
    const MatrixBasis basis = pauli_basis(1);
    const RMatrix l = testing::rotation_generator("X", kPi / 2, basis);
    EXPECT_LT((logm_principal_real(expm(l)) - l).norm(), 1e-12);
}

TEST(SpectralDecompose, ProjectorsAreComplete) {
    std::mt19937_64 rng(16);
    const CMatrix a = testing::random_complex(rng, 6, 6);
    const SpectralDecomposition sd = spectral_decompose(a);
    ASSERT_EQ(sd.size(), 6u);
    CMatrix sum = CMatrix::Zero(6, 6);
    for (std::size_t j = 0; j < sd.size(); ++j) {
        sum += sd.projectors[j];
        for (std::size_t k = 0; k < sd.size(); ++k) {
            const CMatrix prod = sd.projectors[j] * sd.projectors[k];
            const CMatrix expect = j == k ? sd.projectors[j] : CMatrix::Zero(6, 6);
            EXPECT_LT((prod - expect).norm(), 1e-10);
        }
    }
    EXPECT_LT((sum - CMatrix::Identity(6, 6)).norm(), 1e-10);
    EXPECT_LT((sd.reconstruct() - a).norm(), 1e-10 * a.norm());
}

TEST(SpectralDecompose, MergesDegenerateEigenvalues) {
    std::mt19937_64 rng(17);
    const CMatrix s = testing::random_complex(rng, 4, 4);
    CVector d(4);
    d << 1.0, 1.0, 2.0, Complex(0, 3);
    const CMatrix a = s * d.asDiagonal() * s.inverse();
    const SpectralDecomposition sd = spectral_decompose(a, 1e-6);
    ASSERT_EQ(sd.size(), 3u);
    for (std::size_t j = 0; j < sd.size(); ++j) {
        if (std::abs(sd.eigenvalues[j] - 1.0) < 1e-6) {
            EXPECT_NEAR(sd.projectors[j].trace().real(), 2.0, 1e-8);
        }
    }
    EXPECT_LT((sd.reconstruct() - a).norm(), 1e-8 * a.norm());
}

TEST(SpectralDecompose, RejectsJordanBlock) {
    CMatrix j = CMatrix::Zero(2, 2);
    j(0, 0) = 1.0;
    j(1, 1) = 1.0;
    j(0, 1) = 1.0;
    EXPECT_THROW(spectral_decompose(j), NotDiagonalizableError);
}

TEST(Kron, ElementFormula) {
    std::mt19937_64 rng(18);
    const CMatrix a = testing::random_complex(rng, 2, 3);
    const CMatrix b = testing::random_complex(rng, 3, 2);
    const CMatrix k = kron(a, b);
    ASSERT_EQ(k.rows(), 6);
    ASSERT_EQ(k.cols(), 6);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 2; ++q) {
                    EXPECT_EQ(k(i * 3 + p, j * 2 + q), a(i, j) * b(p, q));
                }
}

TEST(Vec, SandwichIdentity) {
    std::mt19937_64 rng(19);
    const CMatrix a = testing::random_complex(rng, 3, 3);
    const CMatrix x = testing::random_complex(rng, 3, 3);
    const CMatrix b = testing::random_complex(rng, 3, 3);
    EXPECT_LT((vec(a * x * b) - kron(b.transpose(), a) * vec(x)).norm(), 1e-12);
    EXPECT_EQ(unvec(vec(x), 3), x);
}

TEST(MatrixPower, MatchesRepeatedProduct) {
    std::mt19937_64 rng(20);
    const RMatrix g = testing::random_real(rng, 4, 4) / 2.0;
    RMatrix ref = RMatrix::Identity(4, 4);
    for (int n = 0; n <= 13; ++n) {
        EXPECT_LT((matrix_power(g, n) - ref).norm(), 1e-10 * (1.0 + ref.norm()));
        ref = ref * g;
    }
    EXPECT_THROW(matrix_power(g, -1), std::invalid_argument);
}

}  // namespace
}  // namespace rlt
