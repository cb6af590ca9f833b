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

#include "rlt/perturb.h"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/special_functions/legendre.hpp>

namespace rlt {
namespace {

// (e^x - 1) / x, with the series near zero.
Complex exp_difference_quotient(Complex x) {
    if (std::abs(x) < 1e-5) {
        return 1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0;
    }
    return (std::exp(x) - 1.0) / x;
}

CMatrix apply_spectral(const SpectralDecomposition& sd, const CMatrix& coeff, const CMatrix& x) {
    if (x.rows() != sd.dim || x.cols() != sd.dim) {
        throw DimensionError("spectral map: argument dimension does not match the decomposition");
    }
    const std::size_t c = sd.size();
    CMatrix out = CMatrix::Zero(sd.dim, sd.dim);
    for (std::size_t j = 0; j < c; ++j) {
        CMatrix right = CMatrix::Zero(sd.dim, sd.dim);
        for (std::size_t k = 0; k < c; ++k) {
            right += coeff(j, k) * sd.projectors[k];
        }
        out.noalias() += sd.projectors[j] * x * right;
    }
    return out;
}

CMatrix reciprocal(const CMatrix& m) { return m.cwiseInverse(); }

struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes and weights on [0, 1].
GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) {
        throw std::invalid_argument("quadrature: steps must be >= 1");
    }
    GaussLegendreRule rule;
    for (double x : boost::math::legendre_p_zeros<double>(n)) {
        const double dp = boost::math::legendre_p_prime(n, x);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes.push_back(0.5 * (1.0 + x));
        rule.weights.push_back(0.5 * w);
        if (x != 0.0) {
            rule.nodes.push_back(0.5 * (1.0 - x));
            rule.weights.push_back(0.5 * w);
        }
    }
    return rule;
}

CMatrix conjugation_quadrature(const CMatrix& a, const CMatrix& b, int steps, double sign) {
    if (a.rows() != a.cols() || b.rows() != a.rows() || b.cols() != a.cols()) {
        throw DimensionError("quadrature oracle: A and B must be square of equal size");
    }
    const GaussLegendreRule rule = gauss_legendre(steps);
    CMatrix out = CMatrix::Zero(a.rows(), a.cols());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = sign * rule.nodes[i];
        out += rule.weights[i] * (expm(CMatrix(s * a)) * b * expm(CMatrix(-s * a)));
    }
    return out;
}

CMatrix commutator(const CMatrix& x, const CMatrix& y) { return x * y - y * x; }

}  // namespace

std::string to_string(MapKind kind) {
    switch (kind) {
        case MapKind::kIdentity:
            return "identity";
        case MapKind::kZero:
            return "zero";
        case MapKind::kDcl:
            return "dcl";
        case MapKind::kDcr:
            return "dcr";
        case MapKind::kCml:
            return "cml";
        case MapKind::kCmr:
            return "cmr";
        case MapKind::kSsp:
            return "ssp";
        case MapKind::kSspc:
            return "sspc";
        case MapKind::kComposed:
            return "composed";
    }
    return "unknown";
}

SuperMap::SuperMap(Eigen::Index dim, CMatrix rep, MapKind kind)
    : dim_(dim), rep_(std::move(rep)), kind_(kind) {
    if (rep_.rows() != dim * dim || rep_.cols() != dim * dim) {
        throw DimensionError("SuperMap: representation must be m^2 x m^2");
    }
}

SuperMap SuperMap::identity(Eigen::Index dim) {
    return SuperMap(dim, CMatrix::Identity(dim * dim, dim * dim), MapKind::kIdentity);
}

SuperMap SuperMap::zero(Eigen::Index dim) {
    return SuperMap(dim, CMatrix::Zero(dim * dim, dim * dim), MapKind::kZero);
}

CMatrix SuperMap::apply(const CMatrix& x) const {
    if (x.rows() != dim_ || x.cols() != dim_) {
        throw DimensionError("SuperMap::apply: argument dimension mismatch");
    }
    return unvec(rep_ * vec(x), dim_);
}

RMatrix SuperMap::apply_real(const RMatrix& x) const {
    return apply(x.cast<Complex>()).real();
}

SuperMap SuperMap::after(const SuperMap& inner) const {
    if (inner.dim_ != dim_) {
        throw DimensionError("SuperMap composition: dimension mismatch");
    }
    return SuperMap(dim_, rep_ * inner.rep_, MapKind::kComposed);
}

SuperMap& SuperMap::operator+=(const SuperMap& other) {
    if (other.dim_ != dim_) {
        throw DimensionError("SuperMap sum: dimension mismatch");
    }
    rep_ += other.rep_;
    kind_ = MapKind::kComposed;
    return *this;
}

SuperMap operator*(const SuperMap& outer, const SuperMap& inner) { return outer.after(inner); }

SuperMap operator+(const SuperMap& a, const SuperMap& b) {
    SuperMap out = a;
    out += b;
    return out;
}

SuperMap operator*(double scale, const SuperMap& map) {
    return SuperMap(map.dim(), scale * map.rep(), MapKind::kComposed);
}

std::string SingularityReport::describe() const {
    std::ostringstream out;
    if (!is_singular) {
        out << "nonsingular (min |e^{a_j-a_k} - 1| = " << min_gap << ")";
        return out.str();
    }
    out << "singular: e^{a_j - a_k} = 1 for eigenvalue pairs";
    for (const auto& [j, k] : offending) {
        out << " (" << eigenvalues[j] << ", " << eigenvalues[k] << ")";
    }
    return out.str();
}

SingularityError::SingularityError(SingularityReport report, const std::string& context)
    : Error((context.empty() ? std::string() : context + ": ") + report.describe()),
      report_(std::move(report)) {}

SingularityReport check_singularity(const SpectralDecomposition& sd, double threshold) {
    SingularityReport report;
    report.threshold = threshold;
    report.eigenvalues = sd.eigenvalues;
    report.min_gap = std::numeric_limits<double>::infinity();
    const int c = static_cast<int>(sd.size());
    for (int j = 0; j < c; ++j) {
        for (int k = 0; k < c; ++k) {
            if (j == k) {
                continue;
            }
            const double gap = std::abs(std::exp(sd.eigenvalues[j] - sd.eigenvalues[k]) - 1.0);
            report.min_gap = std::min(report.min_gap, gap);
            if (gap < threshold) {
                report.offending.emplace_back(j, k);
            }
        }
    }
    report.is_singular = !report.offending.empty();
    return report;
}

CMatrix ell_table(const SpectralDecomposition& sd) {
    const Eigen::Index c = static_cast<Eigen::Index>(sd.size());
    CMatrix ell(c, c);
    for (Eigen::Index j = 0; j < c; ++j) {
        for (Eigen::Index k = 0; k < c; ++k) {
            ell(j, k) =
                j == k ? Complex(1.0) : exp_difference_quotient(sd.eigenvalues[j] - sd.eigenvalues[k]);
        }
    }
    return ell;
}

SuperMap spectral_map(const SpectralDecomposition& sd, const CMatrix& coeff, MapKind kind) {
    const Eigen::Index m = sd.dim;
    const std::size_t c = sd.size();
    CMatrix rep = CMatrix::Zero(m * m, m * m);
    // sum_jk coeff(j,k) P_k^T kron P_j, grouped by k.
    for (std::size_t k = 0; k < c; ++k) {
        CMatrix left = CMatrix::Zero(m, m);
        for (std::size_t j = 0; j < c; ++j) {
            left += coeff(j, k) * sd.projectors[j];
        }
        rep += kron(sd.projectors[k].transpose(), left);
    }
    return SuperMap(m, std::move(rep), kind);
}

PerturbationMaps::PerturbationMaps(const SpectralDecomposition& sd, double singularity_threshold)
    : dcl_(spectral_map(sd, ell_table(sd), MapKind::kDcl)),
      dcr_(spectral_map(sd, ell_table(sd).transpose(), MapKind::kDcr)),
      report_(check_singularity(sd, singularity_threshold)) {
    if (!report_.is_singular) {
        const CMatrix inv = reciprocal(ell_table(sd));
        cml_.emplace(spectral_map(sd, inv, MapKind::kCml));
        cmr_.emplace(spectral_map(sd, inv.transpose(), MapKind::kCmr));
    }
}

const SuperMap& PerturbationMaps::cml() const {
    if (!cml_) {
        throw SingularityError(report_, "cml undefined");
    }
    return *cml_;
}

const SuperMap& PerturbationMaps::cmr() const {
    if (!cmr_) {
        throw SingularityError(report_, "cmr undefined");
    }
    return *cmr_;
}

PerturbationMaps build_maps(const SpectralDecomposition& sd, double singularity_threshold) {
    return PerturbationMaps(sd, singularity_threshold);
}

CMatrix dcl_apply(const SpectralDecomposition& sd, const CMatrix& b) {
    return apply_spectral(sd, ell_table(sd), b);
}

CMatrix dcr_apply(const SpectralDecomposition& sd, const CMatrix& b) {
    return apply_spectral(sd, ell_table(sd).transpose(), b);
}

CMatrix cml_apply(const SpectralDecomposition& sd, const CMatrix& b) {
    const SingularityReport report = check_singularity(sd);
    if (report.is_singular) {
        throw SingularityError(report, "cml undefined");
    }
    return apply_spectral(sd, reciprocal(ell_table(sd)), b);
}

CMatrix cmr_apply(const SpectralDecomposition& sd, const CMatrix& b) {
    const SingularityReport report = check_singularity(sd);
    if (report.is_singular) {
        throw SingularityError(report, "cmr undefined");
    }
    return apply_spectral(sd, reciprocal(ell_table(sd)).transpose(), b);
}

CMatrix dcl_apply(const CMatrix& a, const CMatrix& b) { return dcl_apply(spectral_decompose(a), b); }
CMatrix dcr_apply(const CMatrix& a, const CMatrix& b) { return dcr_apply(spectral_decompose(a), b); }
CMatrix cml_apply(const CMatrix& a, const CMatrix& b) { return cml_apply(spectral_decompose(a), b); }
CMatrix cmr_apply(const CMatrix& a, const CMatrix& b) { return cmr_apply(spectral_decompose(a), b); }

CMatrix oracle_dcl_quadrature(const CMatrix& a, const CMatrix& b, int steps) {
    return conjugation_quadrature(a, b, steps, 1.0);
}

CMatrix oracle_dcr_quadrature(const CMatrix& a, const CMatrix& b, int steps) {
    return conjugation_quadrature(a, b, steps, -1.0);
}

TwoGateComposition compose_two(const CMatrix& a, const CMatrix& a_prime) {
    if (a.rows() != a_prime.rows() || a.cols() != a_prime.cols()) {
        throw DimensionError("compose_two: generators must have equal size");
    }
    const CMatrix c = logm_principal(CMatrix(expm(a) * expm(a_prime)));
    const SpectralDecomposition sd_c = spectral_decompose(c);
    const PerturbationMaps maps_c(sd_c);
    if (maps_c.singularity().is_singular) {
        throw SingularityError(maps_c.singularity(), "compose_two: composed generator");
    }
    const PerturbationMaps maps_a(spectral_decompose(a));
    const PerturbationMaps maps_a_prime(spectral_decompose(a_prime));
    return TwoGateComposition{c, maps_c.cml() * maps_a.dcl(), maps_c.cmr() * maps_a_prime.dcr()};
}

RepetitionSplit repetition_split(const SpectralDecomposition& sd) {
    const Eigen::Index c = static_cast<Eigen::Index>(sd.size());
    const CMatrix diag = CMatrix::Identity(c, c);
    const CMatrix off = CMatrix::Ones(c, c) - diag;
    return RepetitionSplit{spectral_map(sd, diag, MapKind::kSsp),
                           spectral_map(sd, off, MapKind::kSspc)};
}

bool has_period(const CMatrix& a, int period, double tol) {
    if (period < 1) {
        return false;
    }
    const CMatrix g = expm(a);
    return (matrix_power(g, period) - CMatrix::Identity(a.rows(), a.cols())).norm() < tol;
}

CMatrix predict_power(const CMatrix& a, const CMatrix& b, long long n, int period) {
    if (n < 1) {
        throw std::invalid_argument("predict_power: n must be >= 1");
    }
    if (!has_period(a, period)) {
        throw AperiodicError("predict_power: " + std::to_string(period) +
                             " is not a period of e^A");
    }
    const SpectralDecomposition sd = spectral_decompose(a);
    const long long r = n % period;
    const CMatrix diag = CMatrix::Identity(sd.size(), sd.size());
    const CMatrix ssp_b = apply_spectral(sd, diag, b);
    const CMatrix sspc_b = b - ssp_b;
    return static_cast<double>(r) * (a + sspc_b) + static_cast<double>(n) * ssp_b;
}

CMatrix bch_truncated(const CMatrix& a, const CMatrix& b, int order) {
    if (order < 1 || order > 3) {
        throw std::invalid_argument("bch_truncated: order must be 1, 2 or 3");
    }
    // ln(e^X e^Y) with X = B, Y = A.
    CMatrix out = a + b;
    if (order >= 2) {
        out += 0.5 * commutator(b, a);
    }
    if (order >= 3) {
        out += (commutator(b, commutator(b, a)) + commutator(a, commutator(a, b))) / 12.0;
    }
    return out;
}

bool bch_sufficient_condition(const CMatrix& a, const CMatrix& b) {
    return a.norm() + b.norm() <= std::log(2.0);
}

}  // namespace rlt
