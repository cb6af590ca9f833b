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

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rlt/errors.h"

namespace rlt {
namespace {

RVector flatten(const ProbabilityTable& probs) {
    RVector out(static_cast<Eigen::Index>(probs.num_entries()));
    Eigen::Index row = 0;
    for (const auto& per_prep : probs.values) {
        for (const auto& per_povm : per_prep) {
            for (double p : per_povm) {
                out(row++) = p;
            }
        }
    }
    return out;
}

// Orthonormal basis of the complement of the maximally entangled vector.
CMatrix omega_complement(int dim) {
    const int n = dim * dim;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(conditional_projector(dim));
    // Eigenvalues are {0, 1, ..., 1} in ascending order.
    return solver.eigenvectors().rightCols(n - 1);
}

RMatrix weighted_design(const FitProblem& fp) {
    return fp.row_weights.cwiseSqrt().asDiagonal() * fp.design;
}

void fill_diagnostics(const FitProblem& fp, const RVector& x, FitResult& result) {
    result.deltas = unpack_deltas(fp, x);
    const RVector residual = fp.design * x - fp.observations;
    result.objective = 0.5 * residual.dot(fp.row_weights.cwiseProduct(residual));
    const Eigen::Index block = static_cast<Eigen::Index>(fp.generator_dim) * fp.generator_dim;
    result.eac_residuals.clear();
    for (Eigen::Index offset : fp.row_offsets) {
        result.eac_residuals.push_back(residual.segment(offset, block).norm());
    }
    result.gates.clear();
    for (std::size_t j = 0; j < fp.estimated.size(); ++j) {
        const LindbladPhysicality phys =
            lindblad_physicality(fp.ideal[j] + result.deltas[j], fp.basis);
        result.gates.push_back({fp.estimated_names[j], phys.tp_residual, phys.cp_min_eig});
    }
    result.identifiability = analyze_identifiability(fp);
}

}  // namespace

RMatrix sensing_matrix(const SpamModel& spam) {
    if (spam.preparations.empty() || spam.povms.empty()) {
        throw std::invalid_argument("sensing_matrix: empty SPAM model");
    }
    const Eigen::Index m = spam.preparations.front().size();
    std::vector<RVector> rows;
    for (const RVector& rho : spam.preparations) {
        for (const Povm& povm : spam.povms) {
            for (const RVector& effect : povm.effects) {
                if (rho.size() != m || effect.size() != m) {
                    throw DimensionError("sensing_matrix: inconsistent SPAM dimensions");
                }
                RVector row(m * m);
                for (Eigen::Index b = 0; b < m; ++b) {
                    row.segment(b * m, m) = rho(b) * effect;
                }
                rows.push_back(std::move(row));
            }
        }
    }
    RMatrix out(static_cast<Eigen::Index>(rows.size()), m * m);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    }
    return out;
}

QptEstimate qpt_linear_inversion(const ProbabilityTable& probs, const SpamModel& spam,
                                 const MatrixBasis& basis) {
    const RMatrix s = sensing_matrix(spam);
    const Eigen::Index m = basis.size();
    if (s.cols() != m * m) {
        throw DimensionError("qpt_linear_inversion: SPAM model does not match the basis");
    }
    const RVector f = flatten(probs);
    if (f.size() != s.rows()) {
        throw DimensionError("qpt_linear_inversion: probability table does not match SPAM model");
    }
    Eigen::JacobiSVD<RMatrix> svd(s, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (s.rows() < s.cols() || !(smin > 1e-10 * sv(0))) {
        throw SingularMatrixError(
            "qpt_linear_inversion: sensing matrix is rank deficient (SPAM set is not "
            "informationally complete)");
    }
    QptEstimate est;
    est.g_hat = svd.solve(f).reshaped(m, m);
    est.sensing_condition = sv(0) / smin;
    const ChannelPhysicality phys = channel_physicality(est.g_hat, basis);
    est.tp_residual = phys.tp_residual;
    est.cj_min_eig = phys.cj_min_eig;
    return est;
}

QptEstimate qpt_linear_inversion(const ShotTable& counts, const SpamModel& spam,
                                 const MatrixBasis& basis) {
    QptEstimate est = qpt_linear_inversion(counts.frequencies(), spam, basis);
    est.shots = counts.shots;
    return est;
}

Lindbladian extract_lindbladian(const QptEstimate& est, long long r,
                                const Lindbladian& unit_ideal) {
    if (unit_ideal.rows() != est.g_hat.rows() || unit_ideal.cols() != est.g_hat.cols()) {
        throw DimensionError("extract_lindbladian: estimate and unit generator differ in size");
    }
    const RMatrix target = static_cast<double>(r) * unit_ideal;
    return logm_near_real(est.g_hat, target) - target;
}

FitProblem assemble_design(const GateSet& gates, const std::vector<EacRecord>& eacs,
                           const std::vector<int>& estimated, WeightScheme scheme) {
    if (eacs.empty()) {
        throw std::invalid_argument("assemble_design: no EACs given");
    }
    if (estimated.empty()) {
        throw std::invalid_argument("assemble_design: no gates to estimate");
    }
    const int m = gates.generator_dim();
    const Eigen::Index block = static_cast<Eigen::Index>(m) * m;

    FitProblem fp;
    fp.generator_dim = m;
    fp.estimated = estimated;
    fp.basis = gates.basis();
    for (int label : estimated) {
        if (label < 0 || label >= gates.size()) {
            throw std::invalid_argument("assemble_design: unknown gate label");
        }
        fp.estimated_names.push_back(gates[label].name);
        fp.ideal.push_back(gates[label].ideal);
    }

    const Eigen::Index num_rows = block * static_cast<Eigen::Index>(eacs.size());
    const Eigen::Index num_cols = block * static_cast<Eigen::Index>(estimated.size());
    fp.design = RMatrix::Zero(num_rows, num_cols);
    fp.observations = RVector::Zero(num_rows);
    fp.row_weights = RVector::Zero(num_rows);

    for (std::size_t a = 0; a < eacs.size(); ++a) {
        const EacRecord& rec = eacs[a];
        const AmplificationMaps& maps = rec.maps;
        if (static_cast<int>(maps.amplified.size()) != gates.size()) {
            throw DimensionError("assemble_design: EAC maps do not match the gate set");
        }
        if (rec.n < 1) {
            throw std::invalid_argument("assemble_design: repetition count must be positive");
        }
        if (rec.observation.rows() != m || rec.observation.cols() != m) {
            throw DimensionError("assemble_design: observation has the wrong size");
        }
        const Eigen::Index row = block * static_cast<Eigen::Index>(a);
        const double r = static_cast<double>(rec.n % maps.period);
        const double n = static_cast<double>(rec.n);
        for (std::size_t j = 0; j < estimated.size(); ++j) {
            const int label = estimated[j];
            fp.design.block(row, block * static_cast<Eigen::Index>(j), block, block) =
                r * maps.not_amplified[label].real_rep() + n * maps.amplified[label].real_rep();
        }
        fp.observations.segment(row, block) = rec.observation.reshaped();
        double w = 1.0;
        if (rec.weight) {
            w = *rec.weight;
        } else if (scheme == WeightScheme::kInverseNSquared) {
            w = 1.0 / (n * n);
        }
        if (!(w > 0.0)) {
            throw std::invalid_argument("assemble_design: EAC weights must be positive");
        }
        fp.row_weights.segment(row, block).setConstant(w);
        fp.eac_weights.push_back(w);
        fp.eac_names.push_back(rec.name);
        fp.row_offsets.push_back(row);
    }
    return fp;
}

RVector pack_deltas(const FitProblem& fp, const std::vector<Lindbladian>& deltas) {
    if (deltas.size() != fp.estimated.size()) {
        throw DimensionError("pack_deltas: one matrix per estimated gate expected");
    }
    const Eigen::Index block = static_cast<Eigen::Index>(fp.generator_dim) * fp.generator_dim;
    RVector x(block * static_cast<Eigen::Index>(deltas.size()));
    for (std::size_t j = 0; j < deltas.size(); ++j) {
        if (deltas[j].rows() != fp.generator_dim || deltas[j].cols() != fp.generator_dim) {
            throw DimensionError("pack_deltas: wrong matrix size");
        }
        x.segment(block * static_cast<Eigen::Index>(j), block) = deltas[j].reshaped();
    }
    return x;
}

std::vector<Lindbladian> unpack_deltas(const FitProblem& fp, const RVector& x) {
    const int m = fp.generator_dim;
    const Eigen::Index block = static_cast<Eigen::Index>(m) * m;
    if (x.size() != block * static_cast<Eigen::Index>(fp.estimated.size())) {
        throw DimensionError("unpack_deltas: wrong vector length");
    }
    std::vector<Lindbladian> out;
    for (std::size_t j = 0; j < fp.estimated.size(); ++j) {
        out.push_back(x.segment(block * static_cast<Eigen::Index>(j), block).reshaped(m, m));
    }
    return out;
}

Identifiability analyze_identifiability(const FitProblem& fp, double rel_tol) {
    const RMatrix wd = weighted_design(fp);
    Eigen::BDCSVD<RMatrix> svd(wd, Eigen::ComputeFullV);
    const RVector& sv = svd.singularValues();
    Identifiability out;
    out.num_parameters = static_cast<int>(wd.cols());
    const double cutoff = sv.size() > 0 ? rel_tol * sv(0) : 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) {
            ++out.rank;
        }
    }
    const RMatrix& v = svd.matrixV();
    out.kernel = v.rightCols(wd.cols() - out.rank);
    out.coordinate_score = v.leftCols(out.rank).rowwise().squaredNorm();
    for (Eigen::Index i = 0; i < out.coordinate_score.size(); ++i) {
        if (out.coordinate_score(i) < 1.0 - 1e-8) {
            out.unidentifiable.push_back(static_cast<int>(i));
        }
    }
    return out;
}

RMatrix identifiable_projector(const FitProblem& fp, double rel_tol) {
    const Identifiability id = analyze_identifiability(fp, rel_tol);
    const Eigen::Index n = id.num_parameters;
    return RMatrix::Identity(n, n) - id.kernel * id.kernel.transpose();
}

FitResult fit_unconstrained(const FitProblem& fp) {
    const RMatrix wd = weighted_design(fp);
    const RVector wt = fp.row_weights.cwiseSqrt().cwiseProduct(fp.observations);
    Eigen::CompleteOrthogonalDecomposition<RMatrix> cod(wd);
    cod.setThreshold(1e-9);
    FitResult result;
    fill_diagnostics(fp, cod.solve(wt), result);
    result.constrained = false;
    result.status = "least_squares";
    return result;
}

FitResult fit_constrained(const FitProblem& fp, const SdpOptions& options) {
    const int m = fp.generator_dim;
    const int d = fp.basis.dim();
    const Eigen::Index block = static_cast<Eigen::Index>(m) * m;
    const Eigen::Index num_gates = static_cast<Eigen::Index>(fp.estimated.size());
    const Eigen::Index nx = block * num_gates;

    QuadraticSdp problem;
    problem.design = fp.design;
    problem.target = fp.observations;
    problem.row_weights = fp.row_weights;

    // <<I| (L_ideal + dL) = 0, one row per column of dL.
    const RVector id = vectorize_hermitian(CMatrix::Identity(d, d), fp.basis);
    problem.equality = RMatrix::Zero(m * num_gates, nx);
    problem.equality_rhs = RVector::Zero(m * num_gates);
    for (Eigen::Index j = 0; j < num_gates; ++j) {
        for (int c = 0; c < m; ++c) {
            const Eigen::Index row = j * m + c;
            problem.equality.block(row, j * block + static_cast<Eigen::Index>(c) * m, 1, m) =
                id.transpose();
            problem.equality_rhs(row) = -id.dot(fp.ideal[j].col(c));
        }
    }

    // V^dag CJ(L_ideal + dL) V >= 0 on the complement of |Omega>>.
    const CMatrix v = omega_complement(d);
    std::vector<CMatrix> unit_terms(block);
    for (int b = 0; b < m; ++b) {
        for (int a = 0; a < m; ++a) {
            RMatrix e = RMatrix::Zero(m, m);
            e(a, b) = 1.0;
            unit_terms[a + static_cast<Eigen::Index>(b) * m] = v.adjoint() * hs_to_cj(e, fp.basis) * v;
        }
    }
    for (Eigen::Index j = 0; j < num_gates; ++j) {
        LmiBlock lmi;
        lmi.constant = v.adjoint() * hs_to_cj(fp.ideal[j], fp.basis) * v;
        lmi.coefficients.assign(nx, CMatrix());
        for (Eigen::Index k = 0; k < block; ++k) {
            lmi.coefficients[j * block + k] = unit_terms[k];
        }
        problem.blocks.push_back(std::move(lmi));
    }

    // Depolarizing generator rho -> Tr(rho) I/d - rho, scaled, as interior point.
    RMatrix depolarizing = -RMatrix::Identity(m, m);
    const RVector id_unit = id / id.norm();
    depolarizing += id_unit * id_unit.transpose();
    RVector interior(nx);
    for (Eigen::Index j = 0; j < num_gates; ++j) {
        interior.segment(j * block, block) = (1e-3 * depolarizing).reshaped();
    }
    problem.interior_point = interior;

    const SdpSolution sol = solve_quadratic_sdp(problem, options);
    if (sol.status != SdpStatus::kConverged) {
        std::ostringstream msg;
        msg << "fit_constrained: solver stopped with status " << to_string(sol.status)
            << " after " << sol.iterations << " iterations (primal residual "
            << sol.primal_residual << ", dual residual " << sol.dual_residual << ")";
        throw SolverError(msg.str());
    }
    FitResult result;
    fill_diagnostics(fp, sol.x, result);
    result.constrained = true;
    result.status = to_string(sol.status);
    result.iterations = sol.iterations;
    result.restoration_step = sol.restoration_step;
    return result;
}

}  // namespace rlt
