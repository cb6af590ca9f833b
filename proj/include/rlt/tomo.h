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

#ifndef RLT_TOMO_H
#define RLT_TOMO_H

#include <optional>
#include <string>
#include <vector>

#include "rlt/eac.h"
#include "rlt/sdp.h"
#include "rlt/sim.h"

namespace rlt {

struct QptEstimate {
    HSMatrix g_hat;
    double tp_residual = 0.0;
    double cj_min_eig = 0.0;
    /// Ratio of extreme singular values of the sensing matrix.
    double sensing_condition = 0.0;
    /// Shots per setting, 0 for exact probabilities.
    long long shots = 0;
};

/// Rows (rho_p kron Pi_x)^T so that probabilities = sensing * vec(G).
RMatrix sensing_matrix(const SpamModel& spam);

/// Least-squares inversion of the probabilities against the given (ideal)
/// SPAM model. Throws SingularMatrixError for a rank-deficient design.
QptEstimate qpt_linear_inversion(const ProbabilityTable& probs, const SpamModel& spam,
                                 const MatrixBasis& basis);
QptEstimate qpt_linear_inversion(const ShotTable& counts, const SpamModel& spam,
                                 const MatrixBasis& basis);

/// log(G_hat) - r L_unit, with the logarithm branch closest to r L_unit.
Lindbladian extract_lindbladian(const QptEstimate& est, long long r,
                                const Lindbladian& unit_ideal);

/// One observed EAC: its maps, repetition count and extracted Y.
struct EacRecord {
    std::string name;
    AmplificationMaps maps;
    long long n = 1;
    Lindbladian observation;
    /// Overrides the default weight 1/n^2.
    std::optional<double> weight;
};

enum class WeightScheme { kInverseNSquared, kUniform };

struct FitProblem {
    int generator_dim = 0;
    /// Gate labels whose errors are fitted, in column-block order.
    std::vector<int> estimated;
    std::vector<std::string> estimated_names;
    std::vector<Lindbladian> ideal;
    MatrixBasis basis;
    /// Columns are column-major vec(dL_j) stacked over `estimated`.
    RMatrix design;
    RVector observations;
    RVector row_weights;
    std::vector<double> eac_weights;
    std::vector<std::string> eac_names;
    std::vector<Eigen::Index> row_offsets;
};

/// Stacks r rep(f_not_amp) + n rep(f_amp) per EAC. Throws
/// std::invalid_argument for an empty list or unknown estimated labels.
FitProblem assemble_design(const GateSet& gates, const std::vector<EacRecord>& eacs,
                           const std::vector<int>& estimated,
                           WeightScheme scheme = WeightScheme::kInverseNSquared);

struct Identifiability {
    int rank = 0;
    int num_parameters = 0;
    /// Orthonormal basis (columns) of the design kernel.
    RMatrix kernel;
    /// Squared norm of each coordinate's projection onto the row space.
    RVector coordinate_score;
    /// Coordinates with score below 1 - 1e-8.
    std::vector<int> unidentifiable;

    bool full_rank() const { return rank == num_parameters; }
};

Identifiability analyze_identifiability(const FitProblem& fp, double rel_tol = 1e-9);

/// Orthogonal projector onto the row space of the weighted design.
RMatrix identifiable_projector(const FitProblem& fp, double rel_tol = 1e-9);

struct GateFitDiagnostics {
    std::string name;
    double tp_residual = 0.0;
    double cp_min_eig = 0.0;
};

struct FitResult {
    std::vector<Lindbladian> deltas;
    double objective = 0.0;
    std::vector<double> eac_residuals;
    std::vector<GateFitDiagnostics> gates;
    Identifiability identifiability;
    bool constrained = false;
    std::string status;
    int iterations = 0;
    double restoration_step = 0.0;
};

/// Weighted least squares subject to trace preservation and conditional
/// complete positivity of every L_ideal + dL. Throws SolverError when the
/// solver does not converge.
FitResult fit_constrained(const FitProblem& fp, const SdpOptions& options = {});

/// Minimum-norm weighted least squares without physicality constraints.
FitResult fit_unconstrained(const FitProblem& fp);

/// Stacks deltas into the column-major parameter vector of `fp`.
RVector pack_deltas(const FitProblem& fp, const std::vector<Lindbladian>& deltas);
std::vector<Lindbladian> unpack_deltas(const FitProblem& fp, const RVector& x);

}  // namespace rlt

#endif  // RLT_TOMO_H
