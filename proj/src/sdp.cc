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

#include <algorithm>
#include <cmath>

#include "rlt/errors.h"

namespace rlt {
namespace {

// Hermitian D x D matrix <-> real vector [Re(X); Im(X)] of length 2 D^2, an
// isometry for the real inner product Re Tr(X^dag Y).
RVector herm_to_real(const CMatrix& x) {
    const Eigen::Index n = x.size();
    RVector out(2 * n);
    out.head(n) = x.real().reshaped();
    out.tail(n) = x.imag().reshaped();
    return out;
}

CMatrix real_to_herm(const Eigen::Ref<const RVector>& v, Eigen::Index dim) {
    const Eigen::Index n = dim * dim;
    CMatrix out(dim, dim);
    out.real() = v.head(n).reshaped(dim, dim);
    out.imag() = v.tail(n).reshaped(dim, dim);
    return out;
}

CMatrix project_psd(const CMatrix& x) {
    const CMatrix h = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    const RVector vals = solver.eigenvalues().cwiseMax(0.0);
    const CMatrix& vecs = solver.eigenvectors();
    return vecs * vals.cast<Complex>().asDiagonal() * vecs.adjoint();
}

CMatrix block_value(const LmiBlock& block, const RVector& x) {
    CMatrix out = block.constant;
    for (std::size_t p = 0; p < block.coefficients.size(); ++p) {
        if (block.coefficients[p].size() != 0 && x(p) != 0.0) {
            out += x(p) * block.coefficients[p];
        }
    }
    return out;
}

bool all_blocks_feasible(const QuadraticSdp& problem, const RVector& x, double tol) {
    for (const LmiBlock& block : problem.blocks) {
        if (lmi_min_eigenvalue(block, x) < -tol) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::string to_string(SdpStatus status) {
    switch (status) {
        case SdpStatus::kConverged:
            return "converged";
        case SdpStatus::kMaxIterations:
            return "max_iterations";
    }
    return "unknown";
}

double lmi_min_eigenvalue(const LmiBlock& block, const RVector& x) {
    const CMatrix f = block_value(block, x);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (f + f.adjoint()),
                                                  Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

SdpSolution solve_quadratic_sdp(const QuadraticSdp& problem, const SdpOptions& options) {
    const Eigen::Index nx = problem.design.cols();
    if (problem.target.size() != problem.design.rows() ||
        problem.row_weights.size() != problem.design.rows()) {
        throw DimensionError("solve_quadratic_sdp: design, target and weights disagree");
    }

    // x = x0 + N y parametrizes the equality-feasible set.
    RVector x0 = RVector::Zero(nx);
    RMatrix null_basis = RMatrix::Identity(nx, nx);
    if (problem.equality.rows() > 0) {
        if (problem.equality.cols() != nx || problem.equality_rhs.size() != problem.equality.rows()) {
            throw DimensionError("solve_quadratic_sdp: equality constraint has the wrong shape");
        }
        Eigen::JacobiSVD<RMatrix> svd(problem.equality, Eigen::ComputeFullU | Eigen::ComputeFullV);
        svd.setThreshold(1e-10);
        x0 = svd.solve(problem.equality_rhs);
        if ((problem.equality * x0 - problem.equality_rhs).norm() >
            1e-9 * (1.0 + problem.equality_rhs.norm())) {
            throw SolverError("solve_quadratic_sdp: equality constraints are infeasible");
        }
        const Eigen::Index rank = svd.rank();
        null_basis = svd.matrixV().rightCols(nx - rank);
    }
    const Eigen::Index ny = null_basis.cols();

    const RMatrix weighted_design = problem.row_weights.cwiseSqrt().asDiagonal() * problem.design;
    const RVector weighted_target = problem.row_weights.cwiseSqrt().cwiseProduct(problem.target);
    const RMatrix md = weighted_design * null_basis;
    const RVector offset = weighted_design * x0 - weighted_target;
    const RMatrix hessian = md.transpose() * md;
    const RVector gradient = md.transpose() * offset;

    // Stacked real form of the LMI constraints: z = G y + c.
    std::vector<Eigen::Index> block_dims;
    Eigen::Index rows = 0;
    for (const LmiBlock& block : problem.blocks) {
        if (static_cast<Eigen::Index>(block.coefficients.size()) != nx) {
            throw DimensionError("solve_quadratic_sdp: LMI block needs one coefficient per variable");
        }
        block_dims.push_back(block.constant.rows());
        rows += 2 * block.constant.size();
    }
    RMatrix lmi_map = RMatrix::Zero(rows, nx);
    RVector lmi_offset(rows);
    {
        Eigen::Index row = 0;
        for (const LmiBlock& block : problem.blocks) {
            const Eigen::Index len = 2 * block.constant.size();
            for (Eigen::Index p = 0; p < nx; ++p) {
                if (block.coefficients[p].size() != 0) {
                    lmi_map.block(row, p, len, 1) = herm_to_real(block.coefficients[p]);
                }
            }
            lmi_offset.segment(row, len) = herm_to_real(block_value(block, x0));
            row += len;
        }
    }
    const RMatrix g = lmi_map * null_basis;

    // Scale the penalty to the relative size of the quadratic and constraint terms.
    double rho = options.rho;
    {
        const double h_scale = hessian.trace();
        const double g_scale = g.squaredNorm();
        if (h_scale > 0.0 && g_scale > 0.0) {
            rho *= h_scale / g_scale;
        }
    }
    auto factorize = [&](double r) {
        RMatrix k = hessian + r * g.transpose() * g;
        k.diagonal().array() += options.proximal;
        return Eigen::LLT<RMatrix>(k);
    };
    const double rho_initial = rho;
    Eigen::LLT<RMatrix> kkt = factorize(rho);

    auto project = [&](const RVector& v) {
        RVector out(v.size());
        Eigen::Index row = 0;
        for (Eigen::Index dim : block_dims) {
            const Eigen::Index len = 2 * dim * dim;
            out.segment(row, len) = herm_to_real(project_psd(real_to_herm(v.segment(row, len), dim)));
            row += len;
        }
        return out;
    };

    SdpSolution sol;
    RVector y = RVector::Zero(ny);
    RVector z = rows > 0 ? project(lmi_offset) : RVector();
    RVector u = RVector::Zero(rows);

    if (rows == 0) {
        // Plain equality-constrained least squares.
        y = kkt.solve(-gradient);
        sol.status = SdpStatus::kConverged;
    } else {
        const double sqrt_rows = std::sqrt(static_cast<double>(rows));
        const double sqrt_ny = std::sqrt(static_cast<double>(std::max<Eigen::Index>(ny, 1)));
        for (int it = 1; it <= options.max_iterations; ++it) {
            const RVector rhs = -gradient + rho * g.transpose() * (z - lmi_offset - u) +
                                options.proximal * y;
            y = kkt.solve(rhs);
            const RVector v = g * y + lmi_offset;
            const RVector z_old = z;
            z = project(v + u);
            u += v - z;

            sol.iterations = it;
            sol.primal_residual = (v - z).norm();
            sol.dual_residual = rho * (g.transpose() * (z - z_old)).norm();
            const double eps_primal =
                options.abs_tol * sqrt_rows + options.rel_tol * std::max(v.norm(), z.norm());
            const double eps_dual =
                options.abs_tol * sqrt_ny + options.rel_tol * rho * (g.transpose() * u).norm();
            if (sol.primal_residual <= eps_primal && sol.dual_residual <= eps_dual) {
                sol.status = SdpStatus::kConverged;
                break;
            }
            if (it % 50 == 0) {
                double scale = 1.0;
                if (sol.primal_residual > 10.0 * sol.dual_residual) {
                    scale = 2.0;
                } else if (sol.dual_residual > 10.0 * sol.primal_residual) {
                    scale = 0.5;
                }
                if (scale != 1.0 && rho * scale > 1e-6 * rho_initial &&
                    rho * scale < 1e6 * rho_initial) {
                    rho *= scale;
                    u /= scale;
                    kkt = factorize(rho);
                }
            }
        }
    }

    RVector x = x0 + null_basis * y;
    if (problem.interior_point && !all_blocks_feasible(problem, x, options.feasibility_tol)) {
        const RVector& interior = *problem.interior_point;
        if (all_blocks_feasible(problem, interior, 0.0)) {
            double lo = 0.0;
            double hi = 1.0;
            for (int step = 0; step < 60; ++step) {
                const double mid = 0.5 * (lo + hi);
                if (all_blocks_feasible(problem, (1.0 - mid) * x + mid * interior,
                                        options.feasibility_tol)) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            x = (1.0 - hi) * x + hi * interior;
            sol.restoration_step = hi;
        }
    }

    sol.x = x;
    const RVector residual = problem.design * x - problem.target;
    sol.objective = 0.5 * residual.dot(problem.row_weights.cwiseProduct(residual));
    sol.equality_residual =
        problem.equality.rows() > 0 ? (problem.equality * x - problem.equality_rhs).norm() : 0.0;
    for (const LmiBlock& block : problem.blocks) {
        sol.block_min_eig.push_back(lmi_min_eigenvalue(block, x));
    }
    return sol;
}

}  // namespace rlt
