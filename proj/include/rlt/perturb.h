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

#ifndef RLT_PERTURB_H
#define RLT_PERTURB_H

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rlt/errors.h"
#include "rlt/linalg.h"

namespace rlt {

enum class MapKind { kIdentity, kZero, kDcl, kDcr, kCml, kCmr, kSsp, kSspc, kComposed };

std::string to_string(MapKind kind);

/// Linear map on m x m matrices, stored as its m^2 x m^2 matrix acting on
/// column-major vec(X). Composition is matrix multiplication.
class SuperMap {
   public:
    SuperMap(Eigen::Index dim, CMatrix rep, MapKind kind = MapKind::kComposed);

    static SuperMap identity(Eigen::Index dim);
    static SuperMap zero(Eigen::Index dim);

    Eigen::Index dim() const { return dim_; }
    const CMatrix& rep() const { return rep_; }
    MapKind kind() const { return kind_; }

    CMatrix apply(const CMatrix& x) const;
    /// Applies to a real matrix and drops the (roundoff) imaginary part.
    RMatrix apply_real(const RMatrix& x) const;

    /// Real part of the representation; for maps built from real generators
    /// the imaginary part is roundoff.
    RMatrix real_rep() const { return rep_.real(); }

    /// (*this) o inner.
    SuperMap after(const SuperMap& inner) const;

    SuperMap& operator+=(const SuperMap& other);

   private:
    Eigen::Index dim_;
    CMatrix rep_;
    MapKind kind_;
};

SuperMap operator*(const SuperMap& outer, const SuperMap& inner);
SuperMap operator+(const SuperMap& a, const SuperMap& b);
SuperMap operator*(double scale, const SuperMap& map);

/// Pairs of distinct eigenvalues with e^{a_j - a_k} numerically equal to 1,
/// where the composition maps are undefined.
struct SingularityReport {
    bool is_singular = false;
    std::vector<std::pair<int, int>> offending;
    std::vector<Complex> eigenvalues;
    double threshold = 1e-6;
    /// Smallest |e^{a_j - a_k} - 1| over j != k (infinity for one eigenvalue).
    double min_gap = 0.0;

    std::string describe() const;
};

class SingularityError : public Error {
   public:
    explicit SingularityError(SingularityReport report, const std::string& context = "");

    const SingularityReport& report() const { return report_; }

   private:
    SingularityReport report_;
};

inline constexpr double kSingularityThreshold = 1e-6;

SingularityReport check_singularity(const SpectralDecomposition& sd,
                                    double threshold = kSingularityThreshold);

/// l_jk = 1 for j == k, (e^{a_j - a_k} - 1) / (a_j - a_k) otherwise.
CMatrix ell_table(const SpectralDecomposition& sd);

/// sum_{jk} coeff(j, k) P_j X P_k as a SuperMap.
SuperMap spectral_map(const SpectralDecomposition& sd, const CMatrix& coeff, MapKind kind);

/// dcl/dcr always exist; cml/cmr exist only when the spectrum is nonsingular.
class PerturbationMaps {
   public:
    explicit PerturbationMaps(const SpectralDecomposition& sd,
                              double singularity_threshold = kSingularityThreshold);

    const SuperMap& dcl() const { return dcl_; }
    const SuperMap& dcr() const { return dcr_; }
    /// Throw SingularityError when the spectrum is singular.
    const SuperMap& cml() const;
    const SuperMap& cmr() const;
    const SingularityReport& singularity() const { return report_; }

   private:
    SuperMap dcl_;
    SuperMap dcr_;
    std::optional<SuperMap> cml_;
    std::optional<SuperMap> cmr_;
    SingularityReport report_;
};

PerturbationMaps build_maps(const SpectralDecomposition& sd,
                            double singularity_threshold = kSingularityThreshold);

/// Direct evaluation of the maps through the projectors, without forming
/// the m^2 x m^2 representation.
CMatrix dcl_apply(const SpectralDecomposition& sd, const CMatrix& b);
CMatrix dcr_apply(const SpectralDecomposition& sd, const CMatrix& b);
CMatrix cml_apply(const SpectralDecomposition& sd, const CMatrix& b);
CMatrix cmr_apply(const SpectralDecomposition& sd, const CMatrix& b);

CMatrix dcl_apply(const CMatrix& a, const CMatrix& b);
CMatrix dcr_apply(const CMatrix& a, const CMatrix& b);
CMatrix cml_apply(const CMatrix& a, const CMatrix& b);
CMatrix cmr_apply(const CMatrix& a, const CMatrix& b);

/// Gauss-Legendre evaluation of int_0^1 e^{sA} B e^{-sA} ds (and the mirrored
/// integrand for dcr). Needs no diagonalization.
CMatrix oracle_dcl_quadrature(const CMatrix& a, const CMatrix& b, int steps = 64);
CMatrix oracle_dcr_quadrature(const CMatrix& a, const CMatrix& b, int steps = 64);

struct TwoGateComposition {
    /// C = ln(e^A e^{A'}).
    CMatrix c;
    /// cml_C o dcl_A, acting on the error of the left factor.
    SuperMap map_left;
    /// cmr_C o dcr_{A'}, acting on the error of the right factor.
    SuperMap map_right;
};

/// First-order composition of e^{A+B} e^{A'+B'}. Throws SingularityError if C
/// is singular.
TwoGateComposition compose_two(const CMatrix& a, const CMatrix& a_prime);

struct RepetitionSplit {
    SuperMap ssp;
    SuperMap sspc;
};

RepetitionSplit repetition_split(const SpectralDecomposition& sd);

/// True if ||(e^A)^k - I||_F < tol.
bool has_period(const CMatrix& a, int period, double tol = 1e-8);

/// Predicted generator r A + r sspc_A(B) + n ssp_A(B) of [e^{A+B}]^n with
/// r = n mod period. Throws AperiodicError if `period` is not a period of e^A.
CMatrix predict_power(const CMatrix& a, const CMatrix& b, long long n, int period);

/// Truncated BCH series of ln(e^B e^A) (B applied after A) up to `order` in
/// {1, 2, 3}.
CMatrix bch_truncated(const CMatrix& a, const CMatrix& b, int order);

/// ||A|| + ||B|| <= ln 2.
bool bch_sufficient_condition(const CMatrix& a, const CMatrix& b);

}  // namespace rlt

#endif  // RLT_PERTURB_H
