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

#ifndef RLT_SDP_H
#define RLT_SDP_H

#include <optional>
#include <string>
#include <vector>

#include "rlt/linalg.h"

namespace rlt {

/// Hermitian linear matrix inequality constant + sum_p x_p coefficients[p] >= 0.
/// `coefficients` has one entry per variable; empty matrices mean the block
/// does not depend on that variable.
struct LmiBlock {
    CMatrix constant;
    std::vector<CMatrix> coefficients;
};

/// minimize 1/2 sum_i w_i (design x - target)_i^2
/// subject to equality x = equality_rhs and every LMI block PSD.
struct QuadraticSdp {
    RMatrix design;
    RVector target;
    RVector row_weights;
    RMatrix equality;
    RVector equality_rhs;
    std::vector<LmiBlock> blocks;
    /// A point satisfying the equalities with every block strictly positive on
    /// its range; used to restore exact feasibility after the iterations.
    std::optional<RVector> interior_point;
};

struct SdpOptions {
    double rho = 1.0;
    double abs_tol = 1e-11;
    double rel_tol = 1e-10;
    int max_iterations = 200000;
    /// Proximal weight keeping the subproblem definite in unobservable
    /// directions.
    double proximal = 1e-7;
    /// Blocks are accepted when their smallest eigenvalue is above -feasibility_tol.
    double feasibility_tol = 1e-12;
};

enum class SdpStatus { kConverged, kMaxIterations };

std::string to_string(SdpStatus status);

struct SdpSolution {
    RVector x;
    SdpStatus status = SdpStatus::kMaxIterations;
    int iterations = 0;
    double objective = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double equality_residual = 0.0;
    std::vector<double> block_min_eig;
    /// Fraction of the way moved towards the interior point (0 if unused).
    double restoration_step = 0.0;
};

/// ADMM on the splitting Z_b = F_b(x), Z_b >= 0, with the equalities
/// eliminated through a null-space parametrization. Throws SolverError if the
/// equalities are inconsistent.
SdpSolution solve_quadratic_sdp(const QuadraticSdp& problem, const SdpOptions& options = {});

/// Smallest eigenvalue of F_b(x).
double lmi_min_eigenvalue(const LmiBlock& block, const RVector& x);

}  // namespace rlt

#endif  // RLT_SDP_H
