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

#ifndef RLT_LINALG_H
#define RLT_LINALG_H

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace rlt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Matrix exponential by Pade scaling and squaring.
CMatrix expm(const CMatrix& a);
RMatrix expm(const RMatrix& a);

/// Principal matrix logarithm. Throws BranchCutError if an eigenvalue sits on
/// the closed negative real axis (within `branch_tol` relative to its modulus)
/// and SingularMatrixError if `g` is numerically singular.
CMatrix logm_principal(const CMatrix& g, double branch_tol = 1e-8);

/// Real-input convenience: the principal log of a real matrix is real.
RMatrix logm_principal_real(const RMatrix& g, double branch_tol = 1e-8);

/// Logarithm of `g` on the branch whose eigenvalues lie closest to those of
/// `reference`. Equals the principal logarithm when the reference spectrum
/// stays inside the principal strip. Throws BranchCutError when the
/// reference has distinct eigenvalues differing by a multiple of 2 pi i,
/// since the branch is then ambiguous.
CMatrix logm_near(const CMatrix& g, const CMatrix& reference);
RMatrix logm_near_real(const RMatrix& g, const RMatrix& reference);

double fro_norm(const CMatrix& a);
double fro_norm(const RMatrix& a);

struct DiagonalizabilityLimits {
    double max_condition = 1e8;
    /// Reconstruction residual allowed, relative to the Frobenius norm.
    double max_relative_residual = 1e-6;
};

/// A = sum_i a_i P_i with distinct a_i and complementary oblique projectors.
struct SpectralDecomposition {
    std::vector<Complex> eigenvalues;
    std::vector<CMatrix> projectors;
    Eigen::Index dim = 0;
    /// Condition number of the (column-normalized) eigenvector matrix.
    double eigenvector_condition = 1.0;

    std::size_t size() const { return eigenvalues.size(); }
    CMatrix reconstruct() const;
};

/// Eigenvalues closer than `cluster_tol` are merged and their rank-one
/// projectors summed. The default tolerance is 1e-9 * ||A||_F.
/// Throws NotDiagonalizableError for defective or near-defective input.
SpectralDecomposition spectral_decompose(const CMatrix& a,
                                         std::optional<double> cluster_tol = std::nullopt,
                                         const DiagonalizabilityLimits& limits = {});

/// Kronecker product of two dense matrices.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Column-major stacking, vec(AXB) = (B^T kron A) vec(X).
CVector vec(const CMatrix& x);
CMatrix unvec(const CVector& v, Eigen::Index rows);

/// Integer power by repeated squaring.
RMatrix matrix_power(const RMatrix& g, long long n);
CMatrix matrix_power(const CMatrix& g, long long n);

/// Largest absolute imaginary part of any entry.
double max_imag(const CMatrix& a);

}  // namespace rlt

#endif  // RLT_LINALG_H
