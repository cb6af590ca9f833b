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

#include "rlt/config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "rlt/errors.h"

namespace rlt {
namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) {
        fail(where, "expected an object");
    }
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) {
            fail(where, "unknown key '" + item.key() + "'");
        }
    }
}

double get_number(const json& j, const std::string& where) {
    if (!j.is_number()) {
        fail(where, "expected a number");
    }
    return j.get<double>();
}

long long get_integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) {
        fail(where, "expected an integer");
    }
    return j.get<long long>();
}

std::string get_string(const json& j, const std::string& where) {
    if (!j.is_string()) {
        fail(where, "expected a string");
    }
    return j.get<std::string>();
}

std::vector<std::string> get_string_list(const json& j, const std::string& where) {
    if (!j.is_array()) {
        fail(where, "expected an array of strings");
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(get_string(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Complex get_complex(const json& j, const std::string& where) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    fail(where, "expected a number or an [re, im] pair");
}

json complex_to_json(Complex c) {
    if (c.imag() == 0.0) {
        return c.real();
    }
    return json::array({c.real(), c.imag()});
}

void check_pauli_label(const std::string& label, const std::string& where) {
    if (label.empty() ||
        label.find_first_not_of("IXYZ") != std::string::npos) {
        fail(where, "invalid Pauli label '" + label + "'");
    }
}

GeneratorSpec parse_generator(const json& j, const std::string& where, bool allow_delta) {
    std::set<std::string> keys = {"rotation", "hamiltonian", "jumps"};
    if (allow_delta) {
        keys.insert("delta_l");
    }
    check_keys(j, where, keys);
    GeneratorSpec spec;
    if (j.contains("rotation")) {
        const json& r = j["rotation"];
        check_keys(r, where + ".rotation", {"pauli", "angle_deg"});
        if (!r.contains("pauli") || !r.contains("angle_deg")) {
            fail(where + ".rotation", "needs 'pauli' and 'angle_deg'");
        }
        RotationSpec rot;
        rot.pauli = get_string(r["pauli"], where + ".rotation.pauli");
        check_pauli_label(rot.pauli, where + ".rotation.pauli");
        rot.angle_deg = get_number(r["angle_deg"], where + ".rotation.angle_deg");
        spec.rotation = rot;
    }
    if (j.contains("hamiltonian")) {
        const json& h = j["hamiltonian"];
        if (!h.is_object()) {
            fail(where + ".hamiltonian", "expected an object of Pauli coefficients");
        }
        for (const auto& item : h.items()) {
            check_pauli_label(item.key(), where + ".hamiltonian");
            spec.hamiltonian[item.key()] = get_number(item.value(), where + ".hamiltonian." + item.key());
        }
    }
    if (j.contains("jumps")) {
        const json& js = j["jumps"];
        if (!js.is_array()) {
            fail(where + ".jumps", "expected an array");
        }
        for (std::size_t k = 0; k < js.size(); ++k) {
            const std::string w = where + ".jumps[" + std::to_string(k) + "]";
            check_keys(js[k], w, {"pauli", "matrix", "rate"});
            JumpSpec jump;
            if (js[k].contains("pauli") == js[k].contains("matrix")) {
                fail(w, "give exactly one of 'pauli' or 'matrix'");
            }
            if (js[k].contains("pauli")) {
                const json& p = js[k]["pauli"];
                if (!p.is_object() || p.empty()) {
                    fail(w + ".pauli", "expected a non-empty object");
                }
                for (const auto& item : p.items()) {
                    check_pauli_label(item.key(), w + ".pauli");
                    jump.pauli[item.key()] = get_complex(item.value(), w + ".pauli." + item.key());
                }
            } else {
                jump.matrix = complex_matrix_from_json(js[k]["matrix"]);
            }
            if (js[k].contains("rate")) {
                jump.rate = get_number(js[k]["rate"], w + ".rate");
                if (jump.rate < 0.0) {
                    fail(w + ".rate", "must be non-negative");
                }
            }
            spec.jumps.push_back(std::move(jump));
        }
    }
    if (j.contains("delta_l")) {
        spec.delta_l = real_matrix_from_json(j["delta_l"]);
    }
    return spec;
}

json generator_to_json(const GeneratorSpec& spec) {
    json j = json::object();
    if (spec.rotation) {
        j["rotation"] = {{"pauli", spec.rotation->pauli}, {"angle_deg", spec.rotation->angle_deg}};
    }
    if (!spec.hamiltonian.empty()) {
        j["hamiltonian"] = json::object();
        for (const auto& [label, c] : spec.hamiltonian) {
            j["hamiltonian"][label] = c;
        }
    }
    if (!spec.jumps.empty()) {
        j["jumps"] = json::array();
        for (const JumpSpec& jump : spec.jumps) {
            json jj = json::object();
            if (jump.matrix) {
                jj["matrix"] = complex_matrix_to_json(*jump.matrix);
            } else {
                jj["pauli"] = json::object();
                for (const auto& [label, c] : jump.pauli) {
                    jj["pauli"][label] = complex_to_json(c);
                }
            }
            jj["rate"] = jump.rate;
            j["jumps"].push_back(jj);
        }
    }
    if (spec.delta_l) {
        j["delta_l"] = real_matrix_to_json(*spec.delta_l);
    }
    return j;
}

void check_generator_dims(const GeneratorSpec& spec, int num_qubits, const std::string& where) {
    const auto n = static_cast<std::size_t>(num_qubits);
    const int d = 1 << num_qubits;
    if (spec.rotation && spec.rotation->pauli.size() != n) {
        fail(where, "rotation Pauli label must have " + std::to_string(n) + " characters");
    }
    for (const auto& item : spec.hamiltonian) {
        if (item.first.size() != n) {
            fail(where, "Hamiltonian label '" + item.first + "' has the wrong length");
        }
    }
    for (const JumpSpec& jump : spec.jumps) {
        for (const auto& item : jump.pauli) {
            if (item.first.size() != n) {
                fail(where, "jump label '" + item.first + "' has the wrong length");
            }
        }
        if (jump.matrix && (jump.matrix->rows() != d || jump.matrix->cols() != d)) {
            fail(where, "jump matrix must be " + std::to_string(d) + "x" + std::to_string(d));
        }
    }
    if (spec.delta_l && (spec.delta_l->rows() != d * d || spec.delta_l->cols() != d * d)) {
        fail(where, "delta_l must be " + std::to_string(d * d) + "x" + std::to_string(d * d));
    }
}

WeightScheme parse_weights(const std::string& s) {
    if (s == "inverse_n_squared") {
        return WeightScheme::kInverseNSquared;
    }
    if (s == "uniform") {
        return WeightScheme::kUniform;
    }
    fail("weights", "expected 'inverse_n_squared' or 'uniform'");
}

}  // namespace

bool GeneratorSpec::empty() const {
    return !rotation && hamiltonian.empty() && jumps.empty() && !delta_l;
}

SdpOptions SolverConfig::options() const {
    SdpOptions o;
    o.rho = rho;
    o.abs_tol = abs_tol;
    o.rel_tol = rel_tol;
    o.max_iterations = max_iterations;
    return o;
}

std::string to_string(WeightScheme scheme) {
    return scheme == WeightScheme::kUniform ? "uniform" : "inverse_n_squared";
}

json real_matrix_to_json(const RMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(m(i, k));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

RMatrix real_matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        fail("matrix", "expected a non-empty array of rows");
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    RMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols) {
            fail("matrix", "rows must have equal length");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            m(i, k) = get_number(j[i][k], "matrix entry");
        }
    }
    return m;
}

json complex_matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix complex_matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        fail("matrix", "expected a non-empty array of rows");
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols) {
            fail("matrix", "rows must have equal length");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            const json& e = j[i][k];
            if (!e.is_array() || e.size() != 2) {
                fail("matrix", "entries must be [re, im] pairs");
            }
            m(i, k) = Complex(get_number(e[0], "matrix entry"), get_number(e[1], "matrix entry"));
        }
    }
    return m;
}

ExperimentConfig parse_config(const json& j) {
    check_keys(j, "config",
               {"schema_version", "num_qubits", "gates", "eacs", "estimate", "injection", "spam",
                "shots", "seed", "solver", "weights", "verify"});
    ExperimentConfig cfg;
    if (!j.contains("schema_version")) {
        fail("config", "missing 'schema_version'");
    }
    cfg.schema_version = static_cast<int>(get_integer(j["schema_version"], "schema_version"));
    if (cfg.schema_version != kSchemaVersion) {
        fail("schema_version", "unsupported version " + std::to_string(cfg.schema_version));
    }
    if (j.contains("num_qubits")) {
        cfg.num_qubits = static_cast<int>(get_integer(j["num_qubits"], "num_qubits"));
    }
    if (!j.contains("gates") || !j["gates"].is_array()) {
        fail("config", "'gates' must be an array");
    }
    for (std::size_t i = 0; i < j["gates"].size(); ++i) {
        const std::string w = "gates[" + std::to_string(i) + "]";
        const json& g = j["gates"][i];
        if (!g.is_object() || !g.contains("name")) {
            fail(w, "needs a 'name'");
        }
        json gen = g;
        gen.erase("name");
        cfg.gates.push_back({get_string(g["name"], w + ".name"), parse_generator(gen, w, false)});
    }
    if (j.contains("eacs")) {
        if (!j["eacs"].is_array()) {
            fail("eacs", "expected an array");
        }
        for (std::size_t i = 0; i < j["eacs"].size(); ++i) {
            const std::string w = "eacs[" + std::to_string(i) + "]";
            const json& e = j["eacs"][i];
            check_keys(e, w, {"name", "unit", "n"});
            if (!e.contains("name") || !e.contains("unit")) {
                fail(w, "needs 'name' and 'unit'");
            }
            EacConfig eac;
            eac.name = get_string(e["name"], w + ".name");
            eac.unit = get_string_list(e["unit"], w + ".unit");
            if (e.contains("n")) {
                if (!e["n"].is_array()) {
                    fail(w + ".n", "expected an array of integers");
                }
                for (const json& n : e["n"]) {
                    eac.n.push_back(get_integer(n, w + ".n"));
                }
            }
            cfg.eacs.push_back(std::move(eac));
        }
    }
    if (j.contains("estimate")) {
        cfg.estimate = get_string_list(j["estimate"], "estimate");
    }
    if (j.contains("injection")) {
        if (!j["injection"].is_object()) {
            fail("injection", "expected an object keyed by gate name");
        }
        for (const auto& item : j["injection"].items()) {
            cfg.injection[item.key()] =
                parse_generator(item.value(), "injection." + item.key(), true);
        }
    }
    if (j.contains("spam")) {
        check_keys(j["spam"], "spam", {"depolarizing", "rotation"});
        if (j["spam"].contains("depolarizing")) {
            cfg.spam.depolarizing = get_number(j["spam"]["depolarizing"], "spam.depolarizing");
        }
        if (j["spam"].contains("rotation")) {
            cfg.spam.rotation = get_number(j["spam"]["rotation"], "spam.rotation");
        }
    }
    if (j.contains("shots")) {
        const json& s = j["shots"];
        if (s.is_string()) {
            if (s.get<std::string>() != "exact") {
                fail("shots", "expected a positive integer or \"exact\"");
            }
        } else {
            cfg.shots = get_integer(s, "shots");
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
            fail("seed", "expected a non-negative integer");
        }
        if (j["seed"].is_number_integer() && j["seed"].get<long long>() < 0) {
            fail("seed", "expected a non-negative integer");
        }
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("solver")) {
        const json& s = j["solver"];
        check_keys(s, "solver", {"rho", "abs_tol", "rel_tol", "max_iterations"});
        if (s.contains("rho")) cfg.solver.rho = get_number(s["rho"], "solver.rho");
        if (s.contains("abs_tol")) cfg.solver.abs_tol = get_number(s["abs_tol"], "solver.abs_tol");
        if (s.contains("rel_tol")) cfg.solver.rel_tol = get_number(s["rel_tol"], "solver.rel_tol");
        if (s.contains("max_iterations")) {
            cfg.solver.max_iterations =
                static_cast<int>(get_integer(s["max_iterations"], "solver.max_iterations"));
        }
    }
    if (j.contains("weights")) {
        cfg.weights = parse_weights(get_string(j["weights"], "weights"));
    }
    if (j.contains("verify")) {
        const json& v = j["verify"];
        check_keys(v, "verify", {"epsilons", "seeds"});
        if (v.contains("epsilons")) {
            if (!v["epsilons"].is_array()) {
                fail("verify.epsilons", "expected an array");
            }
            cfg.verify.epsilons.clear();
            for (const json& e : v["epsilons"]) {
                cfg.verify.epsilons.push_back(get_number(e, "verify.epsilons"));
            }
        }
        if (v.contains("seeds")) {
            cfg.verify.seeds = static_cast<int>(get_integer(v["seeds"], "verify.seeds"));
        }
    }
    validate_config(cfg);
    return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.num_qubits != 1 && cfg.num_qubits != 2) {
        fail("num_qubits", "only 1 or 2 qubits are supported");
    }
    if (cfg.gates.empty()) {
        fail("gates", "at least one gate is required");
    }
    std::set<std::string> names;
    for (const GateConfig& g : cfg.gates) {
        if (g.name.empty() || !names.insert(g.name).second) {
            fail("gates", "gate names must be non-empty and unique ('" + g.name + "')");
        }
        check_generator_dims(g.generator, cfg.num_qubits, "gate " + g.name);
    }
    std::set<std::string> eac_names;
    for (const EacConfig& e : cfg.eacs) {
        if (e.name.empty() || !eac_names.insert(e.name).second) {
            fail("eacs", "EAC names must be non-empty and unique ('" + e.name + "')");
        }
        if (e.name.find_first_of("/\\") != std::string::npos) {
            fail("eacs", "EAC name '" + e.name + "' must not contain path separators");
        }
        if (e.unit.empty()) {
            fail("eac " + e.name, "unit must not be empty");
        }
        for (const std::string& u : e.unit) {
            if (!names.count(u)) {
                fail("eac " + e.name, "unknown gate '" + u + "'");
            }
        }
        for (long long n : e.n) {
            if (n < 1) {
                fail("eac " + e.name, "repetition counts must be positive");
            }
        }
    }
    for (const std::string& s : cfg.estimate) {
        if (!names.count(s)) {
            fail("estimate", "unknown gate '" + s + "'");
        }
    }
    for (const auto& [name, spec] : cfg.injection) {
        if (!names.count(name)) {
            fail("injection", "unknown gate '" + name + "'");
        }
        check_generator_dims(spec, cfg.num_qubits, "injection " + name);
    }
    if (cfg.spam.depolarizing < 0.0 || cfg.spam.depolarizing > 1.0) {
        fail("spam.depolarizing", "must lie in [0, 1]");
    }
    if (cfg.shots && *cfg.shots <= 0) {
        fail("shots", "must be positive");
    }
    if (!(cfg.solver.rho > 0.0) || !(cfg.solver.abs_tol > 0.0) || !(cfg.solver.rel_tol > 0.0) ||
        cfg.solver.max_iterations <= 0) {
        fail("solver", "all tolerances and limits must be positive");
    }
    if (cfg.verify.seeds <= 0) {
        fail("verify.seeds", "must be positive");
    }
    for (double e : cfg.verify.epsilons) {
        if (!(e >= 0.0)) {
            fail("verify.epsilons", "must be non-negative");
        }
    }
}

json to_json(const ExperimentConfig& cfg) {
    json j;
    j["schema_version"] = cfg.schema_version;
    j["num_qubits"] = cfg.num_qubits;
    j["gates"] = json::array();
    for (const GateConfig& g : cfg.gates) {
        json gj = generator_to_json(g.generator);
        gj["name"] = g.name;
        j["gates"].push_back(gj);
    }
    j["eacs"] = json::array();
    for (const EacConfig& e : cfg.eacs) {
        json ej = {{"name", e.name}, {"unit", e.unit}};
        if (!e.n.empty()) {
            ej["n"] = e.n;
        }
        j["eacs"].push_back(ej);
    }
    j["estimate"] = cfg.estimate;
    j["injection"] = json::object();
    for (const auto& [name, spec] : cfg.injection) {
        j["injection"][name] = generator_to_json(spec);
    }
    j["spam"] = {{"depolarizing", cfg.spam.depolarizing}, {"rotation", cfg.spam.rotation}};
    if (cfg.shots) {
        j["shots"] = *cfg.shots;
    } else {
        j["shots"] = "exact";
    }
    j["seed"] = cfg.seed;
    j["solver"] = {{"rho", cfg.solver.rho},
                   {"abs_tol", cfg.solver.abs_tol},
                   {"rel_tol", cfg.solver.rel_tol},
                   {"max_iterations", cfg.solver.max_iterations}};
    j["weights"] = to_string(cfg.weights);
    j["verify"] = {{"epsilons", cfg.verify.epsilons}, {"seeds", cfg.verify.seeds}};
    return j;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    return to_json(cfg).dump(2) + "\n";
}

MatrixBasis config_basis(const ExperimentConfig& cfg) {
    return pauli_basis(cfg.num_qubits);
}

Lindbladian build_generator(const GeneratorSpec& spec, const MatrixBasis& basis) {
    const int d = basis.dim();
    CMatrix h = CMatrix::Zero(d, d);
    if (spec.rotation) {
        h += (spec.rotation->angle_deg * kPi / 180.0 / 2.0) * pauli_string(spec.rotation->pauli);
    }
    for (const auto& [label, c] : spec.hamiltonian) {
        h += c * pauli_string(label);
    }
    std::vector<CMatrix> jumps;
    for (const JumpSpec& jump : spec.jumps) {
        CMatrix a = CMatrix::Zero(d, d);
        if (jump.matrix) {
            a = *jump.matrix;
        }
        for (const auto& [label, c] : jump.pauli) {
            a += c * pauli_string(label);
        }
        jumps.push_back(std::sqrt(jump.rate) * a);
    }
    Lindbladian l = lindbladian(h, jumps, basis);
    if (spec.delta_l) {
        l += *spec.delta_l;
    }
    return l;
}

GateSet build_gate_set(const ExperimentConfig& cfg) {
    const MatrixBasis basis = config_basis(cfg);
    std::vector<Gate> gates;
    for (const GateConfig& g : cfg.gates) {
        gates.push_back({g.name, build_generator(g.generator, basis)});
    }
    return GateSet(basis, std::move(gates));
}

UnitSequence build_unit(const GateSet& gates, const EacConfig& eac) {
    UnitSequence seq;
    for (const std::string& name : eac.unit) {
        seq.labels.push_back(gates.label_of(name));
    }
    return seq;
}

std::vector<Lindbladian> build_injection(const ExperimentConfig& cfg, const GateSet& gates) {
    std::vector<Lindbladian> out(gates.size());
    for (const auto& [name, spec] : cfg.injection) {
        out[gates.label_of(name)] = build_generator(spec, gates.basis());
    }
    return out;
}

std::vector<int> estimated_labels(const ExperimentConfig& cfg, const GateSet& gates) {
    std::vector<int> out;
    if (cfg.estimate.empty()) {
        for (int i = 0; i < gates.size(); ++i) {
            out.push_back(i);
        }
    } else {
        for (const std::string& name : cfg.estimate) {
            out.push_back(gates.label_of(name));
        }
    }
    return out;
}

std::vector<long long> default_schedule(int period) {
    const long long k = period;
    std::vector<long long> out = {k, k + 1, 2 * k, 4 * k, 8 * k};
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<long long> eac_schedule(const EacConfig& eac, int period) {
    return eac.n.empty() ? default_schedule(period) : eac.n;
}

}  // namespace rlt
