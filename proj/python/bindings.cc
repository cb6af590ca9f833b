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


#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "rlt/config.h"
#include "rlt/eac.h"
#include "rlt/errors.h"
#include "rlt/linalg.h"
#include "rlt/perturb.h"
#include "rlt/pipeline.h"
#include "rlt/reps.h"
#include "rlt/sim.h"
#include "rlt/tomo.h"

namespace py = pybind11;
using namespace rlt;
using nlohmann::json;

namespace {

GateSet gate_set(int num_qubits, const std::vector<std::pair<std::string, RMatrix>>& gates) {
    std::vector<Gate> out;
    for (const auto& [name, l] : gates) {
        out.push_back({name, l});
    }
    return GateSet(pauli_basis(num_qubits), std::move(out));
}

std::vector<CMatrix> maps_to_reps(const std::vector<SuperMap>& maps) {
    std::vector<CMatrix> out;
    for (const SuperMap& m : maps) {
        out.push_back(m.rep());
    }
    return out;
}

py::dict report_dict(const Report& r) {
    py::dict d;
    d["json"] = r.json.dump();
    d["csv"] = r.csv;
    return d;
}

}  // namespace

PYBIND11_MODULE(_rlt, m) {
    m.doc() = "Robust Lindbladian tomography core";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<DimensionError>(m, "DimensionError", base);
    py::register_exception<NotDiagonalizableError>(m, "NotDiagonalizableError", base);
    py::register_exception<BranchCutError>(m, "BranchCutError", base);
    py::register_exception<SingularMatrixError>(m, "SingularMatrixError", base);
    py::register_exception<SingularityError>(m, "SingularityError", base);
    py::register_exception<AperiodicError>(m, "AperiodicError", base);
    py::register_exception<NotPhysicalError>(m, "NotPhysicalError", base);
    py::register_exception<SolverError>(m, "SolverError", base);
    py::register_exception<ConfigError>(m, "ConfigError", base);
    py::register_exception<DataError>(m, "DataError", base);
    py::register_exception<ApplicabilityError>(m, "ApplicabilityError", base);

    // Bases and generators.
    m.def("pauli_labels", [](int n) { return pauli_basis(n).labels(); }, py::arg("num_qubits"));
    m.def("pauli_basis", [](int n) { return pauli_basis(n).elements(); }, py::arg("num_qubits"));
    m.def("pauli_string", &pauli_string, py::arg("label"));
    m.def(
        "hamiltonian_lindbladian",
        [](const CMatrix& h, int n) { return hamiltonian_lindbladian(h, pauli_basis(n)); },
        py::arg("h"), py::arg("num_qubits"));
    m.def(
        "lindbladian",
        [](const CMatrix& h, const std::vector<CMatrix>& jumps, int n) {
            return lindbladian(h, jumps, pauli_basis(n));
        },
        py::arg("h"), py::arg("jumps"), py::arg("num_qubits"));
    m.def(
        "lindblad_physicality",
        [](const RMatrix& l, int n) {
            const LindbladPhysicality p = lindblad_physicality(l, pauli_basis(n));
            return py::make_tuple(p.tp_residual, p.cp_min_eig);
        },
        py::arg("l"), py::arg("num_qubits"));
    m.def(
        "hs_to_cj", [](const RMatrix& g, int n) { return hs_to_cj(g, pauli_basis(n)); },
        py::arg("g"), py::arg("num_qubits"));

    // Matrix functions.
    m.def("expm", py::overload_cast<const CMatrix&>(&expm), py::arg("a"));
    m.def("logm", &logm_principal, py::arg("g"), py::arg("branch_tol") = 1e-8);
    m.def("logm_near", &logm_near, py::arg("g"), py::arg("reference"));
    m.def("period", [](const RMatrix& g) { return period_of(g); }, py::arg("g"));
    m.def(
        "singularity",
        [](const CMatrix& a) {
            const SingularityReport r = check_singularity(spectral_decompose(a));
            return py::make_tuple(r.is_singular, r.min_gap);
        },
        py::arg("a"));

    // Perturbation maps.
    m.def("dcl", py::overload_cast<const CMatrix&, const CMatrix&>(&dcl_apply), py::arg("a"), py::arg("b"));
    m.def("dcr", py::overload_cast<const CMatrix&, const CMatrix&>(&dcr_apply), py::arg("a"), py::arg("b"));
    m.def("cml", py::overload_cast<const CMatrix&, const CMatrix&>(&cml_apply), py::arg("a"), py::arg("b"));
    m.def("cmr", py::overload_cast<const CMatrix&, const CMatrix&>(&cmr_apply), py::arg("a"), py::arg("b"));
    m.def("bch", &bch_truncated, py::arg("a"), py::arg("b"), py::arg("order"));

    // Units and amplification maps. Gates are (name, generator) pairs.
    m.def(
        "analyze_unit",
        [](int n, const std::vector<std::pair<std::string, RMatrix>>& gates,
           const std::vector<int>& unit) {
            const AmplificationMaps a = analyze_unit(gate_set(n, gates), UnitSequence{unit});
            py::dict d;
            d["period"] = a.period;
            d["unit_ideal"] = a.unit_ideal;
            d["unit_maps"] = maps_to_reps(a.unit_maps);
            d["amplified"] = maps_to_reps(a.amplified);
            d["not_amplified"] = maps_to_reps(a.not_amplified);
            return d;
        },
        py::arg("num_qubits"), py::arg("gates"), py::arg("unit"));

    // Simulation and tomography with the ideal preparation and measurement set.
    m.def(
        "channel_probabilities",
        [](const RMatrix& g, int n) { return channel_probabilities(g, qpt_circuit_set(n)).values; },
        py::arg("g"), py::arg("num_qubits"));
    m.def(
        "qpt",
        [](const std::vector<std::vector<std::vector<double>>>& values, int n) {
            ProbabilityTable p;
            p.values = values;
            return qpt_linear_inversion(p, qpt_circuit_set(n), pauli_basis(n)).g_hat;
        },
        py::arg("probabilities"), py::arg("num_qubits"));

    // Pipeline stages on JSON text.
    m.def(
        "analyze", [](const std::string& cfg) { return report_dict(analyze(parse_config_text(cfg))); },
        py::arg("config"));
    m.def(
        "verify", [](const std::string& cfg) { return report_dict(verify(parse_config_text(cfg))); },
        py::arg("config"));
    m.def(
        "simulate",
        [](const std::string& cfg) {
            std::map<std::string, std::string> out;
            for (const auto& [name, j] : simulate(parse_config_text(cfg))) {
                out[name] = j.dump();
            }
            return out;
        },
        py::arg("config"));
    m.def(
        "fit",
        [](const std::string& cfg, const std::map<std::string, std::string>& files) {
            std::map<std::string, json> parsed;
            for (const auto& [name, text] : files) {
                parsed[name] = json::parse(text);
            }
            return report_dict(fit(parse_config_text(cfg), memory_loader(parsed)));
        },
        py::arg("config"), py::arg("files"));
}
