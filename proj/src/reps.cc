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

#include "rlt/reps.h"

#include <cmath>
#include <sstream>

#include "rlt/errors.h"

namespace rlt {
namespace {

CMatrix single_pauli(char c) {
    CMatrix p(2, 2);
    const Complex i(0.0, 1.0);
    switch (c) {
        case 'I':
            p << 1.0, 0.0, 0.0, 1.0;
            break;
        case 'X':
            p << 0.0, 1.0, 1.0, 0.0;
            break;
        case 'Y':
            p << 0.0, -i, i, 0.0;
            break;
        case 'Z':
            p << 1.0, 0.0, 0.0, -1.0;
            break;
        default:
            throw std::invalid_argument(std::string("unknown Pauli character '") + c + "'");
    }
    return p;
}

void require_basis_dim(const CMatrix& a, const MatrixBasis& basis, const char* what) {
    if (a.rows() != basis.dim() || a.cols() != basis.dim()) {
        std::ostringstream msg;
        msg << what << ": expected a " << basis.dim() << "x" << basis.dim() << " matrix, got "
            << a.rows() << "x" << a.cols();
        throw DimensionError(msg.str());
    }
}

void require_superop_dim(Eigen::Index rows, Eigen::Index cols, const MatrixBasis& basis,
                         const char* what) {
    if (rows != basis.size() || cols != basis.size()) {
        std::ostringstream msg;
        msg << what << ": expected a " << basis.size() << "x" << basis.size()
            << " superoperator, got " << rows << "x" << cols;
        throw DimensionError(msg.str());
    }
}

RVector identity_coordinates(const MatrixBasis& basis) {
    return vectorize_hermitian(CMatrix::Identity(basis.dim(), basis.dim()), basis);
}

double min_hermitian_eigenvalue(const CMatrix& a) {
    const CMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace

MatrixBasis::MatrixBasis(int dim, std::vector<CMatrix> elements, std::vector<std::string> labels)
    : dim_(dim), elements_(std::move(elements)), labels_(std::move(labels)) {
    if (static_cast<int>(elements_.size()) != dim * dim || labels_.size() != elements_.size()) {
        throw DimensionError("MatrixBasis: expected d^2 elements with one label each");
    }
}

int MatrixBasis::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i) {
        if (labels_[i] == label) {
            return i;
        }
    }
    return -1;
}

CMatrix pauli_string(const std::string& label) {
    if (label.empty()) {
        throw std::invalid_argument("pauli_string: empty label");
    }
    CMatrix out = single_pauli(label[0]);
    for (std::size_t q = 1; q < label.size(); ++q) {
        out = kron(out, single_pauli(label[q]));
    }
    return out;
}

MatrixBasis pauli_basis(int num_qubits) {
    if (num_qubits < 1) {
        throw std::invalid_argument("pauli_basis: num_qubits must be >= 1");
    }
    static const char kLetters[] = {'I', 'X', 'Y', 'Z'};
    const int dim = 1 << num_qubits;
    const int count = dim * dim;
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<CMatrix> elements;
    std::vector<std::string> labels;
    elements.reserve(count);
    labels.reserve(count);
    for (int index = 0; index < count; ++index) {
        std::string label(num_qubits, 'I');
        int rest = index;
        for (int q = num_qubits - 1; q >= 0; --q) {
            label[q] = kLetters[rest % 4];
            rest /= 4;
        }
        elements.push_back(norm * pauli_string(label));
        labels.push_back(std::move(label));
    }
    return MatrixBasis(dim, std::move(elements), std::move(labels));
}

MatrixBasis gell_mann_basis(int dim) {
    if (dim < 2) {
        throw std::invalid_argument("gell_mann_basis: dim must be >= 2");
    }
    const Complex i(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<CMatrix> elements;
    std::vector<std::string> labels;
    elements.push_back(CMatrix::Identity(dim, dim) / std::sqrt(static_cast<double>(dim)));
    labels.push_back("I");
    for (int j = 0; j < dim; ++j) {
        for (int k = j + 1; k < dim; ++k) {
            CMatrix sym = CMatrix::Zero(dim, dim);
            sym(j, k) = sym(k, j) = inv_sqrt2;
            elements.push_back(sym);
            labels.push_back("S" + std::to_string(j) + std::to_string(k));
            CMatrix anti = CMatrix::Zero(dim, dim);
            anti(j, k) = -i * inv_sqrt2;
            anti(k, j) = i * inv_sqrt2;
            elements.push_back(anti);
            labels.push_back("A" + std::to_string(j) + std::to_string(k));
        }
    }
    for (int l = 1; l < dim; ++l) {
        CMatrix diag = CMatrix::Zero(dim, dim);
        const double scale = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
        for (int j = 0; j < l; ++j) {
            diag(j, j) = scale;
        }
        diag(l, l) = -l * scale;
        elements.push_back(diag);
        labels.push_back("D" + std::to_string(l));
    }
    return MatrixBasis(dim, std::move(elements), std::move(labels));
}

CVector vectorize(const CMatrix& a, const MatrixBasis& basis) {
    require_basis_dim(a, basis, "vectorize");
    CVector v(basis.size());
    for (int k = 0; k < basis.size(); ++k) {
        v(k) = (basis[k].adjoint() * a).trace();
    }
    return v;
}

CMatrix devectorize(const CVector& v, const MatrixBasis& basis) {
    if (v.size() != basis.size()) {
        throw DimensionError("devectorize: vector length does not match the basis size");
    }
    CMatrix out = CMatrix::Zero(basis.dim(), basis.dim());
    for (int k = 0; k < basis.size(); ++k) {
        out += v(k) * basis[k];
    }
    return out;
}

RVector vectorize_hermitian(const CMatrix& a, const MatrixBasis& basis) {
    return vectorize(a, basis).real();
}

HSMatrix hs_of_unitary(const CMatrix& u, const MatrixBasis& basis) {
    require_basis_dim(u, basis, "hs_of_unitary");
    const double defect = (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm();
    if (defect > 1e-9) {
        throw std::invalid_argument("hs_of_unitary: matrix is not unitary (||U^dag U - I|| = " +
                                    std::to_string(defect) + ")");
    }
    const CMatrix g =
        hs_of_map([&](const CMatrix& x) -> CMatrix { return u * x * u.adjoint(); }, basis);
    return g.real();
}

CMatrix hs_to_cj(const CMatrix& g, const MatrixBasis& basis) {
    require_superop_dim(g.rows(), g.cols(), basis, "hs_to_cj");
    const int n = basis.size();
    CMatrix cj = CMatrix::Zero(n, n);
    for (int b = 0; b < n; ++b) {
        const CMatrix conj_b = basis[b].conjugate();
        for (int a = 0; a < n; ++a) {
            if (g(a, b) != Complex(0.0)) {
                cj += g(a, b) * kron(basis[a], conj_b);
            }
        }
    }
    return cj;
}

CMatrix hs_to_cj(const RMatrix& g, const MatrixBasis& basis) {
    return hs_to_cj(CMatrix(g.cast<Complex>()), basis);
}

CMatrix cj_to_hs(const CMatrix& cj, const MatrixBasis& basis) {
    require_superop_dim(cj.rows(), cj.cols(), basis, "cj_to_hs");
    const int n = basis.size();
    CMatrix g(n, n);
    for (int b = 0; b < n; ++b) {
        const CMatrix conj_b = basis[b].conjugate();
        for (int a = 0; a < n; ++a) {
            g(a, b) = (kron(basis[a], conj_b).adjoint() * cj).trace();
        }
    }
    return g;
}

CMatrix conditional_projector(int dim) {
    const int n = dim * dim;
    CVector omega = CVector::Zero(n);
    for (int i = 0; i < dim; ++i) {
        omega(i * dim + i) = 1.0;
    }
    return CMatrix::Identity(n, n) - omega * omega.adjoint() / static_cast<double>(dim);
}

ChannelPhysicality channel_physicality(const HSMatrix& g, const MatrixBasis& basis) {
    require_superop_dim(g.rows(), g.cols(), basis, "channel_physicality");
    const RVector id = identity_coordinates(basis);
    ChannelPhysicality out;
    out.tp_residual = (g.transpose() * id - id).norm();
    out.cj_min_eig = min_hermitian_eigenvalue(hs_to_cj(g, basis));
    return out;
}

LindbladPhysicality lindblad_physicality(const Lindbladian& l, const MatrixBasis& basis) {
    require_superop_dim(l.rows(), l.cols(), basis, "lindblad_physicality");
    const RVector id = identity_coordinates(basis);
    const CMatrix q = conditional_projector(basis.dim());
    LindbladPhysicality out;
    out.tp_residual = (l.transpose() * id).norm();
    out.cp_min_eig = min_hermitian_eigenvalue(q * hs_to_cj(l, basis) * q);
    return out;
}

Lindbladian hamiltonian_lindbladian(const CMatrix& h, const MatrixBasis& basis) {
    require_basis_dim(h, basis, "hamiltonian_lindbladian");
    if ((h - h.adjoint()).norm() > 1e-10 * std::max(1.0, h.norm())) {
        throw std::invalid_argument("hamiltonian_lindbladian: Hamiltonian is not Hermitian");
    }
    const Complex minus_i(0.0, -1.0);
    const CMatrix l = hs_of_map(
        [&](const CMatrix& x) -> CMatrix { return minus_i * (h * x - x * h); }, basis);
    return l.real();
}

Lindbladian dissipator_lindbladian(const std::vector<CMatrix>& jumps, const MatrixBasis& basis) {
    const int d = basis.dim();
    CMatrix damping = CMatrix::Zero(d, d);
    for (const auto& a : jumps) {
        require_basis_dim(a, basis, "dissipator_lindbladian");
        damping += a.adjoint() * a;
    }
    const CMatrix l = hs_of_map(
        [&](const CMatrix& x) -> CMatrix {
            CMatrix out = -0.5 * (damping * x + x * damping);
            for (const auto& a : jumps) {
                out += a * x * a.adjoint();
            }
            return out;
        },
        basis);
    return l.real();
}

Lindbladian lindbladian(const CMatrix& h, const std::vector<CMatrix>& jumps,
                        const MatrixBasis& basis) {
    return hamiltonian_lindbladian(h, basis) + dissipator_lindbladian(jumps, basis);
}

}  // namespace rlt
