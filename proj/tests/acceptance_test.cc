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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits with
// status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rlt/config.h"
#include "rlt/eac.h"
#include "rlt/errors.h"
#include "rlt/perturb.h"
#include "rlt/pipeline.h"
#include "rlt/sim.h"
#include "rlt/tomo.h"

namespace {

using namespace rlt;
using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
    bool pass = false;
    std::string detail;
};

Lindbladian rotation(const std::string& pauli, double angle, const MatrixBasis& basis) {
    return hamiltonian_lindbladian(0.5 * angle * pauli_string(pauli), basis);
}

RMatrix random_unit(std::mt19937_64& rng, int m) {
    std::normal_distribution<double> normal;
    RMatrix b(m, m);
    for (Eigen::Index i = 0; i < b.size(); ++i) {
        b(i) = normal(rng);
    }
    return b / b.norm();
}

CMatrix random_hermitian(std::mt19937_64& rng, int d) {
    std::normal_distribution<double> normal;
    CMatrix a(d, d);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        a(i) = Complex(normal(rng), normal(rng));
    }
    return 0.5 * (a + a.adjoint());
}

// Hamiltonian part of norm about pi plus weak dissipation.
Lindbladian random_generator(std::mt19937_64& rng, const MatrixBasis& basis) {
    const int d = basis.dim();
    CMatrix h = random_hermitian(rng, d);
    h *= 0.5 * kPi / h.norm();
    std::uniform_real_distribution<double> rate(0.0, 1e-2);
    std::vector<CMatrix> jumps;
    for (int k = 0; k < 2; ++k) {
        const CMatrix a = random_hermitian(rng, d) + Complex(0, 1) * random_hermitian(rng, d);
        jumps.push_back(std::sqrt(rate(rng)) * a / a.norm());
    }
    return lindbladian(h, jumps, basis);
}

// Hamiltonian error of norm eps/2 plus a full-rank Pauli dissipator of comparable size.
Lindbladian physical_error(std::mt19937_64& rng, const MatrixBasis& basis, double eps) {
    CMatrix h = random_hermitian(rng, basis.dim());
    h *= 0.5 * eps / h.norm();
    std::uniform_real_distribution<double> u(0.5, 1.0);
    std::vector<CMatrix> jumps;
    for (int a = 1; a < basis.size(); ++a) {
        jumps.push_back(std::sqrt(u(rng) * eps / basis.size()) * pauli_string(basis.label(a)));
    }
    Lindbladian l = lindbladian(h, jumps, basis);
    return eps * l / l.norm();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

Outcome norm_constants() {
    const double x90 = rotation("X", kPi / 2, pauli_basis(1)).norm();
    const double zx90 = rotation("ZX", kPi / 2, pauli_basis(2)).norm();
    const bool ok = std::abs(x90 - kPi / std::sqrt(2.0)) < 1e-9 &&
                    std::abs(zx90 - std::sqrt(2.0) * kPi) < 1e-9 && x90 > std::log(2.0) &&
                    zx90 > std::log(2.0);
    return {ok, "||L_X90|| = " + fmt(x90) + ", ||L_ZX90|| = " + fmt(zx90) + ", ln 2 = " +
                    fmt(std::log(2.0))};
}

Outcome periods() {
    const MatrixBasis one = pauli_basis(1);
    const MatrixBasis two = pauli_basis(2);
    const auto p = [](const RMatrix& l) { return period_of(expm(l)); };
    const int x = p(rotation("X", kPi / 2, one));
    const int y = p(rotation("Y", kPi / 2, one));
    const int z = p(rotation("Z", kPi / 2, one));
    const int zx = p(rotation("ZX", kPi / 2, two));
    const int t = p(rotation("Z", kPi / 4, one));
    const int id = p(RMatrix::Zero(4, 4));
    const bool ok = x == 4 && y == 4 && z == 4 && zx == 4 && t == 8 && id == 1;
    std::ostringstream d;
    d << "X90 " << x << ", Y90 " << y << ", Z90 " << z << ", ZX90 " << zx << ", T " << t
      << ", I " << id;
    return {ok, d.str()};
}

Outcome map_algebra() {
    double worst_inverse = 0.0, worst_split = 0.0, worst_quad = 0.0;
    int accepted_total = 0;
    bool ok = true;
    for (int q : {1, 2}) {
        const MatrixBasis basis = pauli_basis(q);
        const int m = basis.size();
        const Eigen::Index n2 = static_cast<Eigen::Index>(m) * m;
        const CMatrix id = CMatrix::Identity(n2, n2);
        std::mt19937_64 rng(1000 + q);
        int accepted = 0;
        int drawn = 0;
        while (accepted < 20 && drawn < 2000) {
            ++drawn;
            const CMatrix a = random_generator(rng, basis).cast<Complex>();
            const SpectralDecomposition sd = spectral_decompose(a);
            // Skip near-singular or badly conditioned draws.
            if (check_singularity(sd).min_gap < 1e-4 || sd.eigenvector_condition > 1e4) {
                continue;
            }
            ++accepted;
            const PerturbationMaps maps = build_maps(sd);
            worst_inverse = std::max(worst_inverse, (maps.dcl().rep() * maps.cml().rep() - id).norm());
            worst_inverse = std::max(worst_inverse, (maps.dcr().rep() * maps.cmr().rep() - id).norm());
            const RepetitionSplit split = repetition_split(sd);
            worst_split = std::max(worst_split, (split.ssp.rep() + split.sspc.rep() - id).norm());
            const CMatrix b = random_unit(rng, m).cast<Complex>();
            worst_quad = std::max(worst_quad, (dcl_apply(sd, b) - oracle_dcl_quadrature(a, b)).norm());
        }
        ok = ok && accepted >= 20;
        accepted_total += accepted;
    }
    ok = ok && worst_inverse <= 1e-8 && worst_split <= 1e-10 && worst_quad <= 1e-8;
    return {ok, std::to_string(accepted_total) + " seeds; max inverse defect " + fmt(worst_inverse) +
                    ", split defect " + fmt(worst_split) + ", quadrature gap " + fmt(worst_quad)};
}

ExperimentConfig one_qubit_verify_config() {
    return parse_config(json::parse(R"({
        "schema_version": 1, "num_qubits": 1,
        "gates": [
            {"name": "X90", "rotation": {"pauli": "X", "angle_deg": 90}},
            {"name": "Y90", "rotation": {"pauli": "Y", "angle_deg": 90}},
            {"name": "Z90", "rotation": {"pauli": "Z", "angle_deg": 90}},
            {"name": "T", "rotation": {"pauli": "Z", "angle_deg": 45}}
        ],
        "eacs": [
            {"name": "xy", "unit": ["X90", "Y90"]},
            {"name": "xyx", "unit": ["X90", "Y90", "X90"]},
            {"name": "tx", "unit": ["T", "X90"]}
        ],
        "seed": 11,
        "verify": {"epsilons": [1e-2, 1e-3], "seeds": 20}
    })"));
}

ExperimentConfig two_qubit_config() {
    return parse_config(json::parse(R"({
        "schema_version": 1, "num_qubits": 2,
        "gates": [
            {"name": "ZX90", "rotation": {"pauli": "ZX", "angle_deg": 90}},
            {"name": "IY90", "rotation": {"pauli": "IY", "angle_deg": 90}},
            {"name": "XI90", "rotation": {"pauli": "XI", "angle_deg": 90}}
        ],
        "eacs": [
            {"name": "zx", "unit": ["ZX90"]},
            {"name": "zx_iy", "unit": ["ZX90", "IY90"]},
            {"name": "xi_zx", "unit": ["XI90", "ZX90"]}
        ],
        "seed": 12,
        "verify": {"epsilons": [1e-2, 1e-3], "seeds": 20}
    })"));
}

Outcome quadratic_order() {
    bool ok = true;
    double lo = 1e300, hi = -1e300;
    int rows = 0;
    int exact = 0;
    std::string failures;
    for (const ExperimentConfig& cfg : {one_qubit_verify_config(), two_qubit_config()}) {
        const Report r = verify(cfg);
        std::set<std::string> seen;
        for (const json& c : r.json["checks"]) {
            seen.insert(c["check"].get<std::string>());
            // verify() leaves the ratio empty only when every residual is at roundoff.
            if (c["min_ratio"].is_null()) {
                ++exact;
                continue;
            }
            if (c["ratio_samples"].get<int>() < 20) {
                ok = false;
            }
            ++rows;
            lo = std::min(lo, c["min_ratio"].get<double>());
            hi = std::max(hi, c["max_ratio"].get<double>());
            if (!c["in_range"].get<bool>()) {
                failures += " " + c["check"].get<std::string>() + "/" +
                            c["subject"].get<std::string>();
            }
        }
        for (const char* t : {"dcl_first_order", "dcr_first_order", "cml_first_order",
                              "cmr_first_order", "pair_composition", "repetition",
                              "unit_composition"}) {
            ok = ok && seen.count(t) > 0;
        }
        ok = ok && r.json["all_ratios_in_range"].get<bool>();
    }
    return {ok, std::to_string(rows) + " (check, subject, eps) rows x 20 seeds, 1q and 2q; ratios in [" +
                    fmt(lo) + ", " + fmt(hi) + "]; " + std::to_string(exact) +
                    " rows exact to roundoff" + failures};
}

Outcome singularity() {
    const MatrixBasis one = pauli_basis(1);
    const MatrixBasis two = pauli_basis(2);
    const auto singular = [](const RMatrix& l) {
        return gate_singularity(Gate{"g", l}).is_singular;
    };
    bool ok = singular(rotation("X", kPi, one));
    for (const RMatrix& l :
         {rotation("X", kPi / 2, one), rotation("Y", kPi / 2, one), rotation("Z", kPi / 2, one),
          rotation("ZX", kPi / 2, two), RMatrix(RMatrix::Zero(4, 4)), rotation("Z", kPi / 4, one)}) {
        ok = ok && !singular(l);
    }
    // The analysis of a unit containing the half turn names the gate.
    const GateSet gates(one, {{"X90", rotation("X", kPi / 2, one)}, {"X", rotation("X", kPi, one)}});
    bool named = false;
    try {
        analyze_unit(gates, UnitSequence{{0, 1}});
    } catch (const UnitSingularityError& e) {
        named = e.gate_name() == "X";
    }
    ok = ok && named;
    return {ok, "X flagged and named; X90, Y90, Z90, ZX90, I, T accepted"};
}

Outcome bch_comparison() {
    const MatrixBasis one = pauli_basis(1);
    const CMatrix big = rotation("X", kPi / 2, one).cast<Complex>();
    const CMatrix small = 0.1 / big.norm() * big;
    const double eps = 1e-3;
    std::mt19937_64 rng(77);
    int better = 0;
    const int seeds = 20;
    double big_thm = 0, big_bch = 0, small_thm = 0, small_bch = 0;
    for (int s = 0; s < seeds; ++s) {
        const CMatrix b = random_unit(rng, 4).cast<Complex>();
        for (int which = 0; which < 2; ++which) {
            const CMatrix& a = which == 0 ? big : small;
            const CMatrix target = expm(CMatrix(eps * b)) * expm(a);
            const double r_thm = (target - expm(CMatrix(a + eps * cml_apply(a, b)))).norm();
            const double r_bch = (target - expm(bch_truncated(a, CMatrix(eps * b), 2))).norm();
            if (which == 0) {
                better += r_thm < r_bch ? 1 : 0;
                big_thm = std::max(big_thm, r_thm);
                big_bch = std::max(big_bch, r_bch);
            } else {
                small_thm = std::max(small_thm, r_thm);
                small_bch = std::max(small_bch, r_bch);
            }
        }
    }
    const double bound = 10.0 * eps * eps;
    const bool ok = better == seeds && small_thm <= bound && small_bch <= bound;
    return {ok, "||A|| = pi/sqrt2: composition " + fmt(big_thm) + " < BCH2 " + fmt(big_bch) +
                    " in " + std::to_string(better) + "/" + std::to_string(seeds) +
                    " seeds; ||A|| = 0.1: " + fmt(small_thm) + ", " + fmt(small_bch) +
                    " (<= 10 eps^2 = " + fmt(bound) + ")"};
}

Outcome end_to_end() {
    const MatrixBasis basis = pauli_basis(1);
    const GateSet gates(basis, {{"X90", rotation("X", kPi / 2, basis)},
                                {"Y90", rotation("Y", kPi / 2, basis)}});
    const SpamModel spam = qpt_circuit_set(1);
    double worst_err = 0.0, worst_tp = 0.0, worst_cp = 0.0;
    bool ok = true;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        std::mt19937_64 rng(seed);
        const std::vector<Lindbladian> deltas = {physical_error(rng, basis, 1e-3),
                                                 physical_error(rng, basis, 1e-3)};
        std::vector<EacRecord> records;
        for (const std::vector<int>& unit : {std::vector<int>{0}, {1}, {0, 1}}) {
            const AmplificationMaps maps = analyze_unit(gates, UnitSequence{unit});
            for (long long n : {4LL, 8LL, 16LL, 40LL}) {
                const ProbabilityTable probs =
                    exact_probabilities(gates, UnitSequence{unit}, deltas, spam, n);
                const QptEstimate est = qpt_linear_inversion(probs, spam, basis);
                EacRecord rec;
                rec.maps = maps;
                rec.n = n;
                rec.observation = extract_lindbladian(est, n % maps.period, maps.unit_ideal);
                records.push_back(std::move(rec));
            }
        }
        const FitProblem fp = assemble_design(gates, records, {0, 1});
        const FitResult res = fit_constrained(fp);
        const RVector err = identifiable_projector(fp) *
                            (pack_deltas(fp, res.deltas) - pack_deltas(fp, deltas));
        worst_err = std::max(worst_err, err.norm());
        for (const GateFitDiagnostics& g : res.gates) {
            worst_tp = std::max(worst_tp, g.tp_residual);
            worst_cp = std::min(worst_cp, g.cp_min_eig);
        }
    }
    ok = worst_err <= 1e-5 && worst_tp <= 1e-8 && worst_cp >= -1e-8;
    return {ok, "3 draws; identifiable error " + fmt(worst_err) + ", TP residual " + fmt(worst_tp) +
                    ", min CP eigenvalue " + fmt(worst_cp)};
}

Outcome robustness() {
    const MatrixBasis basis = pauli_basis(1);
    const RMatrix lx = rotation("X", kPi / 2, basis);
    const GateSet gates(basis, {{"X90", lx}});
    const RMatrix u = lx / lx.norm();
    const double eps = 1e-3;
    const std::vector<Lindbladian> deltas = {eps * u};
    const SpamModel ideal = qpt_circuit_set(1);
    const SpamModel noisy = apply_spam_error(ideal, {1e-2, 1e-2}, 1);
    const UnitSequence unit{{0}};
    const AmplificationMaps maps = analyze_unit(gates, unit);
    const long long shots = 1000000;
    const int seeds = 10;
    double err_rlt = 0.0, err_naive = 0.0;
    const ProbabilityTable p40 = exact_probabilities(gates, unit, deltas, noisy, 40);
    const ProbabilityTable p1 = exact_probabilities(gates, unit, deltas, noisy, 1);
    for (int s = 0; s < seeds; ++s) {
        const QptEstimate e40 = qpt_linear_inversion(sample_counts(p40, shots, 100 + s), ideal, basis);
        EacRecord rec;
        rec.maps = maps;
        rec.n = 40;
        rec.observation = extract_lindbladian(e40, 40 % maps.period, maps.unit_ideal);
        const FitResult fit = fit_constrained(assemble_design(gates, {rec}, {0}));
        err_rlt += std::abs(fit.deltas[0].cwiseProduct(u).sum() - eps);

        const QptEstimate e1 = qpt_linear_inversion(sample_counts(p1, shots, 200 + s), ideal, basis);
        const RMatrix naive = extract_lindbladian(e1, 1, lx);
        err_naive += std::abs(naive.cwiseProduct(u).sum() - eps);
    }
    err_rlt /= seeds;
    err_naive /= seeds;
    const double ratio = err_naive / err_rlt;
    return {ratio >= 5.0, "mean |error| of over-rotation component: RLT n=40 " + fmt(err_rlt) +
                              ", naive n=1 " + fmt(err_naive) + ", ratio " + fmt(ratio)};
}

Outcome two_qubit_pipeline() {
    const auto start = std::chrono::steady_clock::now();
    const ExperimentConfig cfg = two_qubit_config();
    const Report a = analyze(cfg);
    const Report v = verify(cfg);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = a.json["eacs"].size() == 3 && a.json["eacs"][0]["period"] == 4 &&
                    a.json["eacs"][0]["gates"][0]["amplified_map"].size() == 256 &&
                    v.json["all_ratios_in_range"].get<bool>() && seconds < 600.0;
    return {ok, "analyze + verify on ZX90 units (256 x 256 maps) in " + fmt(seconds) + " s"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "norm constants", 1, norm_constants},
        {2, "periods", 1, periods},
        {3, "map algebra", 30, map_algebra},
        {4, "quadratic-order suite", 300, quadratic_order},
        {5, "singularity detection", 1, singularity},
        {6, "BCH comparison", 10, bch_comparison},
        {7, "end-to-end recovery", 120, end_to_end},
        {8, "robustness to SPAM error", 300, robustness},
        {9, "2-qubit feasibility", 600, two_qubit_pipeline},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool within_budget = seconds < c.budget_s;
        const bool pass = out.pass && within_budget;
        failures += pass ? 0 : 1;
        std::printf("[%s] %d %s: %s (%.2f s, budget %.0f s)\n", pass ? "PASS" : "FAIL", c.id,
                    c.name, out.detail.c_str(), seconds, c.budget_s);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
