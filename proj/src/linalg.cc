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

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "rlt/errors.h"

namespace rlt {
namespace {

void require_square(Eigen::Index rows, Eigen::Index cols, const char* what) {
    if (rows != cols) {
        std::ostringstream msg;
        msg << what << ": expected a square matrix, got " << rows << "x" << cols;
        throw DimensionError(msg.str());
    }
}

// Union-find over eigenvalue indices; eigenvalues within `tol` end up in one
// cluster (single linkage).
std::vector<std::vector<Eigen::Index>> cluster_eigenvalues(const CVector& values, double tol) {
    const Eigen::Index n = values.size();
    std::vector<Eigen::Index> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Eigen::Index i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (std::abs(values[i] - values[j]) <= tol) {
                parent[find(j)] = find(i);
            }
        }
    }
    std::vector<std::vector<Eigen::Index>> clusters;
    std::vector<Eigen::Index> slot(n, -1);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<Eigen::Index>(clusters.size());
            clusters.emplace_back();
        }
        clusters[slot[root]].push_back(i);
    }
    return clusters;
}

}  // namespace

CMatrix expm(const CMatrix& a) {
    require_square(a.rows(), a.cols(), "expm");
    return a.exp();
}

RMatrix expm(const RMatrix& a) {
    require_square(a.rows(), a.cols(), "expm");
    return a.exp();
}

CMatrix logm_principal(const CMatrix& g, double branch_tol) {
    require_square(g.rows(), g.cols(), "logm_principal");
    if (g.size() == 0) {
        return g;
    }
    Eigen::ComplexEigenSolver<CMatrix> solver(g, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw Error("logm_principal: eigenvalue computation failed");
    }
    const double scale = std::max(1.0, g.norm());
    for (const Complex& lambda : solver.eigenvalues()) {
        const double modulus = std::abs(lambda);
        if (modulus <= 1e-12 * scale) {
            throw SingularMatrixError("logm_principal: matrix is singular (eigenvalue " +
                                      std::to_string(modulus) + " in modulus)");
        }
        if (lambda.real() < 0.0 && std::abs(lambda.imag()) <= branch_tol * modulus) {
            std::ostringstream msg;
            msg << "logm_principal: eigenvalue " << lambda
                << " lies on the negative real axis (principal branch cut)";
            throw BranchCutError(msg.str());
        }
    }
    return g.log();
}

RMatrix logm_principal_real(const RMatrix& g, double branch_tol) {
    const CMatrix log_g = logm_principal(g.cast<Complex>(), branch_tol);
    return log_g.real();
}

double fro_norm(const CMatrix& a) { return a.norm(); }
double fro_norm(const RMatrix& a) { return a.norm(); }

CMatrix SpectralDecomposition::reconstruct() const {
    CMatrix out = CMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        out += eigenvalues[i] * projectors[i];
    }
    return out;
}

SpectralDecomposition spectral_decompose(const CMatrix& a, std::optional<double> cluster_tol,
                                         const DiagonalizabilityLimits& limits) {
    require_square(a.rows(), a.cols(), "spectral_decompose");
    const Eigen::Index m = a.rows();
    SpectralDecomposition sd;
    sd.dim = m;
    if (m == 0) {
        return sd;
    }

    const double norm = a.norm();
    Eigen::ComplexEigenSolver<CMatrix> solver(a);
    if (solver.info() != Eigen::Success) {
        throw NotDiagonalizableError("spectral_decompose: eigen solver did not converge");
    }
    CMatrix vectors = solver.eigenvectors();
    for (Eigen::Index j = 0; j < m; ++j) {
        const double cn = vectors.col(j).norm();
        if (cn > 0.0) {
            vectors.col(j) /= cn;
        }
    }

    Eigen::JacobiSVD<CMatrix> svd(vectors);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    sd.eigenvector_condition =
        smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    if (!(sd.eigenvector_condition <= limits.max_condition)) {
        std::ostringstream msg;
        msg << "spectral_decompose: matrix is not diagonalizable (eigenvector condition number "
            << sd.eigenvector_condition << " exceeds " << limits.max_condition << ")";
        throw NotDiagonalizableError(msg.str());
    }
    const CMatrix inverse = vectors.partialPivLu().inverse();

    const double tol = cluster_tol.value_or(1e-9 * norm);
    const CVector& values = solver.eigenvalues();
    for (const auto& cluster : cluster_eigenvalues(values, tol)) {
        Complex mean = 0.0;
        CMatrix projector = CMatrix::Zero(m, m);
        for (Eigen::Index idx : cluster) {
            mean += values[idx];
            projector.noalias() += vectors.col(idx) * inverse.row(idx);
        }
        sd.eigenvalues.push_back(mean / static_cast<double>(cluster.size()));
        sd.projectors.push_back(std::move(projector));
    }

    const double residual = (sd.reconstruct() - a).norm();
    if (residual > limits.max_relative_residual * std::max(norm, 1e-300)) {
        std::ostringstream msg;
        msg << "spectral_decompose: matrix is not diagonalizable (reconstruction residual "
            << residual << ")";
        throw NotDiagonalizableError(msg.str());
    }
    return sd;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CVector vec(const CMatrix& x) { return x.reshaped(); }

CMatrix unvec(const CVector& v, Eigen::Index rows) {
    if (rows <= 0 || v.size() % rows != 0) {
        throw DimensionError("unvec: vector length is not a multiple of the row count");
    }
    return v.reshaped(rows, v.size() / rows);
}

template <typename M>
static M power_by_squaring(const M& g, long long n) {
    if (g.rows() != g.cols()) {
        throw DimensionError("matrix_power: expected a square matrix");
    }
    if (n < 0) {
        throw std::invalid_argument("matrix_power: negative exponent");
    }
    M result = M::Identity(g.rows(), g.cols());
    M base = g;
    while (n > 0) {
        if (n & 1) {
            result = result * base;
        }
        n >>= 1;
        if (n > 0) {
            base = base * base;
        }
    }
    return result;
}

RMatrix matrix_power(const RMatrix& g, long long n) { return power_by_squaring(g, n); }
CMatrix matrix_power(const CMatrix& g, long long n) { return power_by_squaring(g, n); }

double max_imag(const CMatrix& a) {
    return a.size() == 0 ? 0.0 : a.imag().cwiseAbs().maxCoeff();
}

CMatrix logm_near(const CMatrix& g, const CMatrix& reference) {
    require_square(g.rows(), g.cols(), "logm_near");
    if (reference.rows() != g.rows() || reference.cols() != g.cols()) {
        throw DimensionError("logm_near: reference has a different size");
    }
    if (g.size() == 0) {
        return g;
    }
    constexpr double kTwoPi = 6.283185307179586;
    constexpr double kStripMargin = 0.25;
    Eigen::ComplexEigenSolver<CMatrix> ref_solver(reference, /*computeEigenvectors=*/false);
    const CVector targets = ref_solver.eigenvalues();
    const double scale = std::max(1.0, reference.norm());
    double max_imag_target = 0.0;
    for (Eigen::Index j = 0; j < targets.size(); ++j) {
        max_imag_target = std::max(max_imag_target, std::abs(targets(j).imag()));
        for (Eigen::Index k = j + 1; k < targets.size(); ++k) {
            const Complex diff = targets(j) - targets(k);
            if (std::abs(diff) > 1e-6 * scale && std::abs(std::exp(diff) - 1.0) < 1e-6) {
                std::ostringstream msg;
                msg << "logm_near: reference eigenvalues " << targets(j) << " and " << targets(k)
                    << " differ by a multiple of 2 pi i, so the logarithm branch is ambiguous";
                throw BranchCutError(msg.str());
            }
        }
    }
    if (max_imag_target < 3.14159265358979323846 - kStripMargin) {
        return logm_principal(g);
    }
    const SpectralDecomposition sd = spectral_decompose(g);
    CMatrix out = CMatrix::Zero(g.rows(), g.cols());
    for (std::size_t j = 0; j < sd.size(); ++j) {
        const Complex mu = sd.eigenvalues[j];
        if (std::abs(mu) <= 1e-12 * std::max(1.0, g.norm())) {
            throw SingularMatrixError("logm_near: matrix is singular");
        }
        const Complex principal = std::log(mu);
        Complex best = principal;
        double best_dist = std::numeric_limits<double>::infinity();
        for (Eigen::Index k = 0; k < targets.size(); ++k) {
            const double shift = std::round((targets(k).imag() - principal.imag()) / kTwoPi);
            const Complex candidate = principal + Complex(0.0, kTwoPi * shift);
            const double dist = std::abs(candidate - targets(k));
            if (dist < best_dist) {
                best_dist = dist;
                best = candidate;
            }
        }
        out += best * sd.projectors[j];
    }
    return out;
}

RMatrix logm_near_real(const RMatrix& g, const RMatrix& reference) {
    return logm_near(g.cast<Complex>(), reference.cast<Complex>()).real();
}

}  // namespace rlt
