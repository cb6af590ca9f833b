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

#include "rlt/pipeline.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <tuple>
#include <sstream>

#include "rlt/errors.h"

namespace rlt {
namespace {

using nlohmann::json;

constexpr double kRatioLow = 3.5;
constexpr double kRatioHigh = 4.5;
// Residuals below this are roundoff: the second-order term vanishes exactly.
constexpr double kRoundoffResidual = 1e-13;

std::string num(double x) {
    std::ostringstream out;
    out << std::setprecision(17) << x;
    return out.str();
}

int matrix_rank(const RMatrix& a) {
    if (a.size() == 0) {
        return 0;
    }
    Eigen::ColPivHouseholderQR<RMatrix> qr(a);
    qr.setThreshold(1e-10);
    return static_cast<int>(qr.rank());
}

std::string unit_text(const std::vector<std::string>& unit) {
    std::string out;
    for (std::size_t i = 0; i < unit.size(); ++i) {
        out += (i ? " " : "") + unit[i];
    }
    return out;
}

[[noreturn]] void rethrow_singular(const UnitSingularityError& e, const std::string& eac) {
    std::ostringstream msg;
    if (!e.gate_name().empty()) {
        msg << "EAC '" << eac << "': gate '" << e.gate_name()
            << "' has a singular ideal generator (" << e.report().describe()
            << "). The method is not applicable to this gate; implement such 180-degree "
               "rotation gates with 90-degree rotation gates.";
    } else {
        msg << "EAC '" << eac << "': the composed generator after " << e.prefix_length()
            << " gates is singular (" << e.report().describe()
            << "). Reorder the unit or decompose 180-degree rotations into 90-degree rotations.";
    }
    throw ApplicabilityError(msg.str());
}

AmplificationMaps analyze_eac(const GateSet& gates, const EacConfig& eac) {
    const UnitSequence seq = build_unit(gates, eac);
    try {
        return analyze_unit(gates, seq);
    } catch (const UnitSingularityError& e) {
        rethrow_singular(e, eac.name);
    } catch (const BranchCutError& e) {
        throw ApplicabilityError("EAC '" + eac.name +
                                 "': the ideal unit has no principal logarithm (" + e.what() + ")");
    } catch (const AperiodicError& e) {
        throw ApplicabilityError("EAC '" + eac.name + "': " + e.what());
    }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over the combined inputs.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

json probability_table_to_json(const ProbabilityTable& t) {
    return t.values;
}

json shot_table_to_json(const ShotTable& t) {
    return t.counts;
}

// Direction label "row|col" of the generator entry (a, b).
std::string direction(const MatrixBasis& basis, int a, int b) {
    return basis.label(a) + "|" + basis.label(b);
}

}  // namespace

std::string data_file_name(const std::string& eac, long long n) {
    return "data/" + eac + "_n" + std::to_string(n) + ".json";
}

Report analyze(const ExperimentConfig& cfg) {
    const GateSet gates = build_gate_set(cfg);
    const MatrixBasis& basis = gates.basis();
    const int m = gates.generator_dim();
    Report report;
    json& j = report.json;
    j["schema_version"] = kSchemaVersion;
    j["num_qubits"] = cfg.num_qubits;
    j["basis"] = basis.labels();
    j["gates"] = json::array();
    for (const Gate& g : gates.gates()) {
        json gj;
        gj["name"] = g.name;
        gj["norm"] = fro_norm(g.ideal);
        gj["bch_norm_condition"] = fro_norm(g.ideal) <= std::log(2.0);
        const SingularityReport sing = gate_singularity(g);
        gj["singular"] = sing.is_singular;
        gj["min_gap"] = sing.min_gap;
        try {
            gj["period"] = period_of(expm(g.ideal));
        } catch (const AperiodicError&) {
            gj["period"] = nullptr;
        }
        j["gates"].push_back(gj);
    }

    std::ostringstream csv;
    csv << "eac,gate,direction,amplified_norm,not_amplified_norm,amplified\n";
    j["eacs"] = json::array();
    for (const EacConfig& eac : cfg.eacs) {
        const AmplificationMaps maps = analyze_eac(gates, eac);
        json ej;
        ej["name"] = eac.name;
        ej["unit"] = eac.unit;
        ej["period"] = maps.period;
        ej["schedule"] = eac_schedule(eac, maps.period);
        ej["unit_ideal"] = real_matrix_to_json(maps.unit_ideal);
        ej["unit_ideal_norm"] = fro_norm(maps.unit_ideal);
        ej["gates"] = json::array();
        std::ostringstream summary;
        summary << "unit [" << unit_text(eac.unit) << "] has period " << maps.period << ".";
        for (int label = 0; label < gates.size(); ++label) {
            if (!maps.present[label]) {
                continue;
            }
            const RMatrix f = maps.unit_maps[label].real_rep();
            const RMatrix amp = maps.amplified[label].real_rep();
            const RMatrix not_amp = maps.not_amplified[label].real_rep();
            json gj;
            gj["name"] = gates[label].name;
            gj["composed_map"] = real_matrix_to_json(f);
            gj["amplified_map"] = real_matrix_to_json(amp);
            gj["not_amplified_map"] = real_matrix_to_json(not_amp);
            gj["amplified_rank"] = matrix_rank(amp);
            gj["not_amplified_rank"] = matrix_rank(not_amp);
            gj["not_amplified_norm"] = not_amp.norm();
            int amplified_directions = 0;
            for (int b = 0; b < m; ++b) {
                for (int a = 0; a < m; ++a) {
                    const Eigen::Index col = a + static_cast<Eigen::Index>(b) * m;
                    const double an = amp.col(col).norm();
                    const double nn = not_amp.col(col).norm();
                    const bool amplified = an > 1e-9;
                    amplified_directions += amplified ? 1 : 0;
                    csv << eac.name << "," << gates[label].name << "," << direction(basis, a, b)
                        << "," << num(an) << "," << num(nn) << "," << (amplified ? 1 : 0) << "\n";
                }
            }
            gj["amplified_directions"] = amplified_directions;
            ej["gates"].push_back(gj);
            summary << " Gate " << gates[label].name << ": " << amplified_directions << " of "
                    << m * m << " generator entries reach the amplified part (rank "
                    << gj["amplified_rank"].get<int>() << "), non-amplified rank "
                    << gj["not_amplified_rank"].get<int>() << ".";
        }
        ej["summary"] = summary.str();
        j["eacs"].push_back(ej);
    }
    report.csv = csv.str();
    return report;
}

std::map<std::string, json> simulate(const ExperimentConfig& cfg) {
    const GateSet gates = build_gate_set(cfg);
    const std::vector<Lindbladian> deltas = build_injection(cfg, gates);
    for (int label = 0; label < gates.size(); ++label) {
        if (deltas[label].size() != 0) {
            try {
                noisy_gate(gates, label, deltas[label]);
            } catch (const NotPhysicalError& e) {
                throw ConfigError("injection for gate '" + gates[label].name +
                                  "' is not CPTP: " + e.what());
            }
        }
    }
    const SpamModel ideal = qpt_circuit_set(cfg.num_qubits);
    const SpamModel spam = apply_spam_error(ideal, cfg.spam, cfg.num_qubits);
    validate_spam(spam, gates.basis());

    std::map<std::string, json> files;
    for (std::size_t a = 0; a < cfg.eacs.size(); ++a) {
        const EacConfig& eac = cfg.eacs[a];
        const UnitSequence seq = build_unit(gates, eac);
        int period = 0;
        try {
            period = period_of(unit_ideal_gate(gates, seq));
        } catch (const AperiodicError& e) {
            throw ApplicabilityError("EAC '" + eac.name + "': " + e.what());
        }
        for (long long n : eac_schedule(eac, period)) {
            const ProbabilityTable probs = exact_probabilities(gates, seq, deltas, spam, n);
            json d;
            d["schema_version"] = kSchemaVersion;
            d["eac"] = eac.name;
            d["unit"] = eac.unit;
            d["n"] = n;
            d["period"] = period;
            d["preparations"] = ideal.preparation_labels;
            json povms = json::array();
            for (const Povm& p : ideal.povms) {
                povms.push_back(p.label);
            }
            d["povms"] = povms;
            if (cfg.shots) {
                const std::uint64_t seed = mix_seed(cfg.seed, a, static_cast<std::uint64_t>(n));
                const ShotTable counts = sample_counts(probs, *cfg.shots, seed);
                d["kind"] = "counts";
                d["shots"] = counts.shots;
                d["seed"] = seed;
                d["values"] = shot_table_to_json(counts);
            } else {
                d["kind"] = "probabilities";
                d["shots"] = "exact";
                d["values"] = probability_table_to_json(probs);
            }
            files[data_file_name(eac.name, n)] = std::move(d);
        }
    }
    return files;
}

DataLoader directory_loader(const std::filesystem::path& dir) {
    return [dir](const std::string& rel) -> json {
        const std::filesystem::path path = dir / rel;
        std::ifstream in(path);
        if (!in) {
            throw DataError("missing data file '" + path.string() + "'");
        }
        try {
            return json::parse(in);
        } catch (const json::parse_error& e) {
            throw DataError("data file '" + path.string() + "' is not valid JSON: " + e.what());
        }
    };
}

DataLoader memory_loader(const std::map<std::string, json>& files) {
    return [files](const std::string& rel) -> json {
        const auto it = files.find(rel);
        if (it == files.end()) {
            throw DataError("missing data file '" + rel + "'");
        }
        return it->second;
    };
}

Report fit(const ExperimentConfig& cfg, const DataLoader& load) {
    const GateSet gates = build_gate_set(cfg);
    const MatrixBasis& basis = gates.basis();
    const int m = gates.generator_dim();
    const SpamModel ideal = qpt_circuit_set(cfg.num_qubits);
    if (cfg.eacs.empty()) {
        throw ConfigError("fit: no EACs configured");
    }

    std::vector<EacRecord> records;
    json eac_rows = json::array();
    for (const EacConfig& eac : cfg.eacs) {
        const AmplificationMaps maps = analyze_eac(gates, eac);
        for (long long n : eac_schedule(eac, maps.period)) {
            const std::string rel = data_file_name(eac.name, n);
            const json d = load(rel);
            if (!d.is_object() || d.value("eac", "") != eac.name || !d.contains("n") ||
                d["n"] != n || !d.contains("values") || !d.contains("kind")) {
                throw DataError("data file '" + rel + "' does not match the configuration");
            }
            QptEstimate est;
            try {
                if (d["kind"] == "counts") {
                    ShotTable counts;
                    counts.counts = d["values"].get<std::vector<std::vector<std::vector<long long>>>>();
                    counts.shots = d["shots"].get<long long>();
                    counts.seed = d.value("seed", std::uint64_t{0});
                    est = qpt_linear_inversion(counts, ideal, basis);
                } else if (d["kind"] == "probabilities") {
                    ProbabilityTable probs;
                    probs.values = d["values"].get<std::vector<std::vector<std::vector<double>>>>();
                    est = qpt_linear_inversion(probs, ideal, basis);
                } else {
                    throw DataError("data file '" + rel + "' has an unknown kind");
                }
            } catch (const json::exception& e) {
                throw DataError("data file '" + rel + "' is malformed: " + e.what());
            } catch (const DimensionError& e) {
                throw DataError("data file '" + rel + "' does not match the SPAM set: " + e.what());
            }
            const long long r = n % maps.period;
            Lindbladian y;
            try {
                y = extract_lindbladian(est, r, maps.unit_ideal);
            } catch (const BranchCutError& e) {
                throw ApplicabilityError("EAC '" + eac.name + "', n = " + std::to_string(n) +
                                         ": estimate has no principal logarithm (" + e.what() + ")");
            }
            EacRecord rec;
            rec.name = eac.name + "_n" + std::to_string(n);
            rec.maps = maps;
            rec.n = n;
            rec.observation = y;
            records.push_back(std::move(rec));
            json row;
            row["name"] = records.back().name;
            row["eac"] = eac.name;
            row["n"] = n;
            row["r"] = r;
            row["qpt"] = {{"tp_residual", est.tp_residual},
                          {"cj_min_eig", est.cj_min_eig},
                          {"sensing_condition", est.sensing_condition},
                          {"shots", est.shots}};
            eac_rows.push_back(row);
        }
    }

    const FitProblem fp = assemble_design(gates, records, estimated_labels(cfg, gates), cfg.weights);
    const FitResult constrained = fit_constrained(fp, cfg.solver.options());
    const FitResult plain = fit_unconstrained(fp);
    const RMatrix projector = identifiable_projector(fp);
    const std::vector<Lindbladian> injected = build_injection(cfg, gates);

    std::vector<Lindbladian> truth;
    bool have_truth = !cfg.injection.empty();
    for (int label : fp.estimated) {
        truth.push_back(injected[label].size() ? injected[label] : RMatrix::Zero(m, m));
    }
    const RVector x_fit = pack_deltas(fp, constrained.deltas);
    const RVector x_plain = pack_deltas(fp, plain.deltas);
    const RVector x_true = pack_deltas(fp, truth);
    const RVector err_ident = projector * (x_fit - x_true);
    const Eigen::Index block = static_cast<Eigen::Index>(m) * m;

    Report report;
    json& j = report.json;
    j["schema_version"] = kSchemaVersion;
    j["basis"] = basis.labels();
    j["solver"] = {{"status", constrained.status},
                   {"iterations", constrained.iterations},
                   {"objective", constrained.objective},
                   {"restoration_step", constrained.restoration_step}};
    j["weights"] = to_string(cfg.weights);
    for (std::size_t a = 0; a < records.size(); ++a) {
        eac_rows[a]["weight"] = fp.eac_weights[a];
        eac_rows[a]["residual"] = constrained.eac_residuals[a];
        eac_rows[a]["unconstrained_residual"] = plain.eac_residuals[a];
    }
    j["eacs"] = eac_rows;
    j["gates"] = json::array();
    for (std::size_t g = 0; g < fp.estimated.size(); ++g) {
        const Eigen::Index off = block * static_cast<Eigen::Index>(g);
        json gj;
        gj["name"] = fp.estimated_names[g];
        gj["fitted_delta"] = real_matrix_to_json(constrained.deltas[g]);
        gj["unconstrained_delta"] = real_matrix_to_json(plain.deltas[g]);
        gj["tp_residual"] = constrained.gates[g].tp_residual;
        gj["cp_min_eig"] = constrained.gates[g].cp_min_eig;
        if (have_truth) {
            gj["true_delta"] = real_matrix_to_json(truth[g]);
            gj["error_norm"] = (constrained.deltas[g] - truth[g]).norm();
            gj["unconstrained_error_norm"] = (plain.deltas[g] - truth[g]).norm();
            gj["identifiable_error_norm"] = err_ident.segment(off, block).norm();
        } else {
            gj["true_delta"] = nullptr;
        }
        j["gates"].push_back(gj);
    }
    const Identifiability& ident = constrained.identifiability;
    json unident = json::array();
    for (int idx : ident.unidentifiable) {
        const int g = idx / static_cast<int>(block);
        const int within = idx % static_cast<int>(block);
        unident.push_back({{"gate", fp.estimated_names[g]},
                           {"direction", direction(basis, within % m, within / m)},
                           {"score", ident.coordinate_score(idx)}});
    }
    j["identifiability"] = {{"rank", ident.rank},
                            {"num_parameters", ident.num_parameters},
                            {"kernel_dimension", ident.kernel.cols()},
                            {"unidentifiable", unident}};
    j["unconstrained"] = {{"objective", plain.objective}};

    std::ostringstream csv;
    csv << "gate,direction,true,fitted,unconstrained,identifiable_score\n";
    for (std::size_t g = 0; g < fp.estimated.size(); ++g) {
        for (int b = 0; b < m; ++b) {
            for (int a = 0; a < m; ++a) {
                const Eigen::Index idx = block * static_cast<Eigen::Index>(g) + a +
                                         static_cast<Eigen::Index>(b) * m;
                csv << fp.estimated_names[g] << "," << direction(basis, a, b) << ","
                    << (have_truth ? num(x_true(idx)) : std::string()) << "," << num(x_fit(idx))
                    << "," << num(x_plain(idx)) << "," << num(ident.coordinate_score(idx)) << "\n";
            }
        }
    }
    report.csv = csv.str();
    return report;
}

namespace {

struct VerifyCase {
    std::string check_name;
    std::string subject;
    std::function<double(double)> residual;
};

CMatrix random_direction(std::mt19937_64& rng, int m) {
    std::normal_distribution<double> normal;
    RMatrix b(m, m);
    for (Eigen::Index i = 0; i < b.size(); ++i) {
        b(i) = normal(rng);
    }
    return (b / b.norm()).cast<Complex>();
}

std::optional<int> try_period(const CMatrix& a) {
    try {
        return period_of(expm(a).real());
    } catch (const AperiodicError&) {
        return std::nullopt;
    }
}

void add_generator_cases(std::vector<VerifyCase>& cases, const std::string& name,
                         const CMatrix& a, std::mt19937_64& rng, int m) {
    const SpectralDecomposition sd = spectral_decompose(a);
    const CMatrix ea = expm(a);
    const CMatrix b = random_direction(rng, m);
    cases.push_back({"dcl_first_order", name, [=](double e) {
                         return (expm(CMatrix(a + e * b)) - expm(CMatrix(e * dcl_apply(sd, b))) * ea).norm();
                     }});
    cases.push_back({"dcr_first_order", name, [=](double e) {
                         return (expm(CMatrix(a + e * b)) - ea * expm(CMatrix(e * dcr_apply(sd, b)))).norm();
                     }});
    if (!check_singularity(sd).is_singular) {
        const CMatrix cml = cml_apply(sd, b);
        const CMatrix cmr = cmr_apply(sd, b);
        cases.push_back({"cml_first_order", name, [=](double e) {
                             return (expm(CMatrix(e * b)) * ea - expm(CMatrix(a + e * cml))).norm();
                         }});
        cases.push_back({"cmr_first_order", name, [=](double e) {
                             return (ea * expm(CMatrix(e * b)) - expm(CMatrix(a + e * cmr))).norm();
                         }});
    }
    if (const std::optional<int> period = try_period(a)) {
        const long long n = 2LL * *period + 1;
        const int k = *period;
        cases.push_back({"repetition", name, [=](double e) {
                             const CMatrix g = matrix_power(expm(CMatrix(a + e * b)), n);
                             return (logm_principal(g) - predict_power(a, CMatrix(e * b), n, k)).norm();
                         }});
    }
}

}  // namespace

Report verify(const ExperimentConfig& cfg) {
    const GateSet gates = build_gate_set(cfg);
    const int m = gates.generator_dim();

    std::ostringstream csv;
    csv << "kind,check,subject,epsilon,seed,residual,residual_half,ratio\n";
    json checks = json::array();
    json zero_rows = json::array();
    json bch_rows = json::array();
    bool all_in_range = true;

    // Two-gate compositions: consecutive gates of each unit, else of the gate list.
    std::vector<std::pair<int, int>> pairs;
    for (const EacConfig& eac : cfg.eacs) {
        const UnitSequence seq = build_unit(gates, eac);
        for (std::size_t i = 0; i + 1 < seq.labels.size(); ++i) {
            pairs.emplace_back(seq.labels[i + 1], seq.labels[i]);
        }
    }
    if (pairs.empty()) {
        for (int i = 0; i + 1 < gates.size(); ++i) {
            pairs.emplace_back(i + 1, i);
        }
    }
    struct PairCase {
        std::string name;
        int left;
        int right;
        TwoGateComposition comp;
    };
    std::vector<PairCase> compositions;
    for (const auto& [left, right] : pairs) {
        const std::string name = gates[left].name + "*" + gates[right].name;
        bool seen = false;
        for (const PairCase& c : compositions) {
            seen = seen || c.name == name;
        }
        if (seen || gate_singularity(gates[left]).is_singular ||
            gate_singularity(gates[right]).is_singular) {
            continue;
        }
        try {
            compositions.push_back({name, left, right,
                                    compose_two(gates[left].ideal.cast<Complex>(),
                                                gates[right].ideal.cast<Complex>())});
        } catch (const SingularityError&) {
        } catch (const BranchCutError&) {
        }
    }
    struct UnitCase {
        std::string name;
        UnitSequence seq;
        std::vector<SuperMap> maps;
        Lindbladian unit_ideal;
    };
    std::vector<UnitCase> units;
    for (const EacConfig& eac : cfg.eacs) {
        UnitCase u;
        u.name = eac.name;
        u.seq = build_unit(gates, eac);
        try {
            u.maps = compose_unit_maps(gates, u.seq);
            u.unit_ideal = unit_ideal_lindbladian(gates, u.seq);
        } catch (const Error&) {
            continue;
        }
        units.push_back(std::move(u));
    }

    // ratio samples keyed by (check_name, subject, epsilon)
    std::map<std::tuple<std::string, std::string, double>, std::vector<double>> samples;
    std::set<std::pair<std::string, std::string>> zero_done;
    std::map<std::tuple<std::string, double>, json> bch_acc;

    for (int s = 0; s < cfg.verify.seeds; ++s) {
        std::mt19937_64 rng(mix_seed(cfg.seed, 7, static_cast<std::uint64_t>(s)));
        std::vector<VerifyCase> cases;
        for (const Gate& g : gates.gates()) {
            add_generator_cases(cases, g.name, g.ideal.cast<Complex>(), rng, m);
        }
        for (const PairCase& pc : compositions) {
            const CMatrix b = random_direction(rng, m);
            const CMatrix bp = random_direction(rng, m);
            const CMatrix a = gates[pc.left].ideal.cast<Complex>();
            const CMatrix ap = gates[pc.right].ideal.cast<Complex>();
            const CMatrix lb = pc.comp.map_left.apply(b);
            const CMatrix rb = pc.comp.map_right.apply(bp);
            const CMatrix c = pc.comp.c;
            cases.push_back({"pair_composition", pc.name, [=](double e) {
                                 return (expm(CMatrix(a + e * b)) * expm(CMatrix(ap + e * bp)) -
                                         expm(CMatrix(c + e * (lb + rb))))
                                     .norm();
                             }});
        }
        for (const UnitCase& u : units) {
            std::vector<CMatrix> dirs;
            CMatrix first_order = CMatrix::Zero(m, m);
            for (int label = 0; label < gates.size(); ++label) {
                dirs.push_back(random_direction(rng, m));
                first_order += u.maps[label].apply(dirs.back());
            }
            const UnitSequence seq = u.seq;
            const CMatrix unit_ideal = u.unit_ideal.cast<Complex>();
            std::vector<CMatrix> ideals;
            for (const Gate& g : gates.gates()) {
                ideals.push_back(g.ideal.cast<Complex>());
            }
            cases.push_back({"unit_composition", u.name, [=](double e) {
                                 CMatrix prod = CMatrix::Identity(m, m);
                                 for (int label : seq.labels) {
                                     prod = expm(CMatrix(ideals[label] + e * dirs[label])) * prod;
                                 }
                                 return (logm_principal(prod) - unit_ideal - e * first_order).norm();
                             }});
            if (const std::optional<int> period = try_period(unit_ideal)) {
                const CMatrix b = random_direction(rng, m);
                const long long n = 2LL * *period + 1;
                const int k = *period;
                cases.push_back({"repetition", u.name, [=](double e) {
                                     const CMatrix g = matrix_power(expm(CMatrix(unit_ideal + e * b)), n);
                                     const CMatrix pred = predict_power(unit_ideal, CMatrix(e * b), n, k);
                                     return (logm_principal(g) - pred).norm();
                                 }});
            }
        }

        for (const VerifyCase& vc : cases) {
            const auto key = std::make_pair(vc.check_name, vc.subject);
            if (!zero_done.count(key)) {
                zero_done.insert(key);
                const double r0 = vc.residual(0.0);
                zero_rows.push_back({{"check", vc.check_name}, {"subject", vc.subject}, {"residual", r0}});
                csv << "zero," << vc.check_name << "," << vc.subject << ",0," << s << "," << num(r0)
                    << ",,\n";
            }
            for (double eps : cfg.verify.epsilons) {
                if (eps == 0.0) {
                    continue;
                }
                const double r1 = vc.residual(eps);
                const double r2 = vc.residual(eps / 2.0);
                std::string ratio_text;
                if (r1 > kRoundoffResidual) {
                    const double ratio = r1 / r2;
                    samples[{vc.check_name, vc.subject, eps}].push_back(ratio);
                    ratio_text = num(ratio);
                } else {
                    samples[{vc.check_name, vc.subject, eps}];
                }
                csv << "ratio," << vc.check_name << "," << vc.subject << "," << num(eps) << "," << s
                    << "," << num(r1) << "," << num(r2) << "," << ratio_text << "\n";
            }
        }

        // Composition residual against second-order BCH, at full and small norm.
        for (const Gate& g : gates.gates()) {
            const CMatrix a_full = g.ideal.cast<Complex>();
            const double norm = a_full.norm();
            if (norm == 0.0) {
                continue;
            }
            const CMatrix b = random_direction(rng, m);
            for (const auto& [subject, a] :
                 {std::make_pair(g.name, a_full),
                  std::make_pair(g.name + "@0.1", CMatrix(0.1 / norm * a_full))}) {
                const SpectralDecomposition sd = spectral_decompose(a);
                if (check_singularity(sd).is_singular) {
                    continue;
                }
                const CMatrix cml = cml_apply(sd, b);
                for (double eps : cfg.verify.epsilons) {
                    if (eps == 0.0) {
                        continue;
                    }
                    const CMatrix target = expm(CMatrix(eps * b)) * expm(a);
                    const double r_cml = (target - expm(CMatrix(a + eps * cml))).norm();
                    const double r_bch = (target - expm(bch_truncated(a, CMatrix(eps * b), 2))).norm();
                    json& acc = bch_acc[{subject, eps}];
                    if (acc.is_null()) {
                        acc = {{"subject", subject},
                               {"norm", a.norm()},
                               {"epsilon", eps},
                               {"bch_condition", bch_sufficient_condition(a, CMatrix(eps * b))},
                               {"seeds", 0},
                               {"cml_better", 0},
                               {"cml_residual_max", 0.0},
                               {"bch2_residual_max", 0.0},
                               {"cml_residual_sum", 0.0},
                               {"bch2_residual_sum", 0.0}};
                    }
                    acc["seeds"] = acc["seeds"].get<int>() + 1;
                    acc["cml_better"] = acc["cml_better"].get<int>() + (r_cml < r_bch ? 1 : 0);
                    acc["cml_residual_max"] = std::max(acc["cml_residual_max"].get<double>(), r_cml);
                    acc["bch2_residual_max"] = std::max(acc["bch2_residual_max"].get<double>(), r_bch);
                    acc["cml_residual_sum"] = acc["cml_residual_sum"].get<double>() + r_cml;
                    acc["bch2_residual_sum"] = acc["bch2_residual_sum"].get<double>() + r_bch;
                    csv << "bch," << "cml_first_order_vs_bch2," << subject << "," << num(eps) << "," << s
                        << "," << num(r_cml) << "," << num(r_bch) << ",\n";
                }
            }
        }
    }

    for (const auto& [key, ratios] : samples) {
        const auto& [check_name, subject, eps] = key;
        json row = {{"check", check_name}, {"subject", subject}, {"epsilon", eps},
                    {"seeds", cfg.verify.seeds}, {"ratio_samples", ratios.size()}};
        if (ratios.empty()) {
            row["min_ratio"] = nullptr;
            row["max_ratio"] = nullptr;
            row["note"] = "second-order term vanishes; residuals at roundoff";
            row["in_range"] = true;
        } else {
            const double lo = *std::min_element(ratios.begin(), ratios.end());
            const double hi = *std::max_element(ratios.begin(), ratios.end());
            row["min_ratio"] = lo;
            row["max_ratio"] = hi;
            row["in_range"] = lo >= kRatioLow && hi <= kRatioHigh;
            all_in_range = all_in_range && row["in_range"].get<bool>();
        }
        checks.push_back(row);
    }
    for (auto& [key, acc] : bch_acc) {
        const double n = acc["seeds"].get<double>();
        acc["cml_residual_mean"] = acc["cml_residual_sum"].get<double>() / n;
        acc["bch2_residual_mean"] = acc["bch2_residual_sum"].get<double>() / n;
        acc.erase("cml_residual_sum");
        acc.erase("bch2_residual_sum");
        bch_rows.push_back(acc);
    }

    Report report;
    report.json = {{"schema_version", kSchemaVersion},
                   {"num_qubits", cfg.num_qubits},
                   {"ratio_range", {kRatioLow, kRatioHigh}},
                   {"checks", checks},
                   {"zero_rows", zero_rows},
                   {"bch", bch_rows},
                   {"all_ratios_in_range", all_in_range}};
    report.csv = csv.str();
    return report;
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    out << j.dump(2) << "\n";
}

void write_report(const std::filesystem::path& out_dir, const std::string& json_name,
                  const std::string& csv_name, const Report& report) {
    write_json(out_dir / json_name, report.json);
    if (!report.csv.empty()) {
        std::ofstream out(out_dir / csv_name);
        if (!out) {
            throw DataError("cannot write '" + (out_dir / csv_name).string() + "'");
        }
        out << report.csv;
    }
}

}  // namespace rlt
