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

#ifndef RLT_REPS_H
#define RLT_REPS_H

#include <string>
#include <vector>

#include "rlt/linalg.h"

namespace rlt {

/// Real d^2 x d^2 matrix of a channel in a Hermitian orthonormal basis,
/// G_ab = Tr[B_a^dag G(B_b)].
using HSMatrix = RMatrix;
/// HS matrix of a finite-time generator, G = expm(L).
using Lindbladian = RMatrix;

/// Orthonormal Hermitian basis of d x d matrices, identity element first.
class MatrixBasis {
   public:
    MatrixBasis() = default;
    MatrixBasis(int dim, std::vector<CMatrix> elements, std::vector<std::string> labels);

    int dim() const { return dim_; }
    /// Number of elements, d^2.
    int size() const { return static_cast<int>(elements_.size()); }
    const CMatrix& operator[](int i) const { return elements_[i]; }
    const std::vector<CMatrix>& elements() const { return elements_; }
    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Index of a label, or -1.
    int index_of(const std::string& label) const;

   private:
    int dim_ = 0;
    std::vector<CMatrix> elements_;
    std::vector<std::string> labels_;
};

/// Normalized Pauli strings over `num_qubits` qubits in lexicographic order
/// (I < X < Y < Z per qubit, leftmost character is the first tensor factor).
MatrixBasis pauli_basis(int num_qubits);

/// Normalized generalized Gell-Mann basis for a d-level system.
MatrixBasis gell_mann_basis(int dim);

/// Unnormalized Pauli string operator, e.g. "ZX" = Z kron X.
CMatrix pauli_string(const std::string& label);

CVector vectorize(const CMatrix& a, const MatrixBasis& basis);
CMatrix devectorize(const CVector& v, const MatrixBasis& basis);

/// Coordinates of a Hermitian operator in the basis (real by construction).
RVector vectorize_hermitian(const CMatrix& a, const MatrixBasis& basis);

/// Complex HS matrix of an arbitrary linear map on d x d matrices.
template <typename Map>
CMatrix hs_of_map(const Map& map, const MatrixBasis& basis) {
    const int n = basis.size();
    CMatrix out(n, n);
    for (int b = 0; b < n; ++b) {
        const CMatrix image = map(basis[b]);
        for (int a = 0; a < n; ++a) {
            out(a, b) = (basis[a].adjoint() * image).trace();
        }
    }
    return out;
}

/// HS matrix of rho -> U rho U^dag. Throws if `u` is not unitary.
HSMatrix hs_of_unitary(const CMatrix& u, const MatrixBasis& basis);

/// CJ(G) = sum_{ij} G(E_ij) kron E_ij, equivalently sum_ab G_ab B_a kron conj(B_b).
/// The identity channel maps to the unnormalized maximally entangled projector.
CMatrix hs_to_cj(const CMatrix& g, const MatrixBasis& basis);
CMatrix hs_to_cj(const RMatrix& g, const MatrixBasis& basis);
CMatrix cj_to_hs(const CMatrix& cj, const MatrixBasis& basis);

/// Q = I - |Omega><Omega| / d acting on the CJ space.
CMatrix conditional_projector(int dim);

struct ChannelPhysicality {
    double tp_residual = 0.0;
    double cj_min_eig = 0.0;
};

struct LindbladPhysicality {
    double tp_residual = 0.0;
    double cp_min_eig = 0.0;
};

/// ||<<I|G - <<I|||, lambda_min(CJ(G)).
ChannelPhysicality channel_physicality(const HSMatrix& g, const MatrixBasis& basis);

/// ||<<I|L||, lambda_min(Q CJ(L) Q).
LindbladPhysicality lindblad_physicality(const Lindbladian& l, const MatrixBasis& basis);

/// Generator of rho -> -i[H, rho]. Throws if H is not Hermitian.
Lindbladian hamiltonian_lindbladian(const CMatrix& h, const MatrixBasis& basis);

/// Generator of rho -> sum_k A_k rho A_k^dag - 1/2 {A_k^dag A_k, rho}.
Lindbladian dissipator_lindbladian(const std::vector<CMatrix>& jumps, const MatrixBasis& basis);

/// Sum of the Hamiltonian and dissipative generators.
Lindbladian lindbladian(const CMatrix& h, const std::vector<CMatrix>& jumps,
                        const MatrixBasis& basis);

}  // namespace rlt

#endif  // RLT_REPS_H
