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

#ifndef RLT_CONFIG_H
#define RLT_CONFIG_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rlt/eac.h"
#include "rlt/sdp.h"
#include "rlt/sim.h"
#include "rlt/tomo.h"

namespace rlt {

inline constexpr int kSchemaVersion = 1;

struct RotationSpec {
    std::string pauli;
    double angle_deg = 0.0;
};

/// Jump operator sqrt(rate) * A with A given by Pauli coefficients or by an
/// explicit matrix.
struct JumpSpec {
    std::map<std::string, Complex> pauli;
    std::optional<CMatrix> matrix;
    double rate = 1.0;
};

/// L = -i[H, .] + sum_k D[A_k] + delta_l, H = rotation term + sum_P c_P P.
struct GeneratorSpec {
    std::optional<RotationSpec> rotation;
    std::map<std::string, double> hamiltonian;
    std::vector<JumpSpec> jumps;
    std::optional<RMatrix> delta_l;

    bool empty() const;
};

struct GateConfig {
    std::string name;
    GeneratorSpec generator;
};

struct EacConfig {
    std::string name;
    std::vector<std::string> unit;
    /// Empty means the default schedule.
    std::vector<long long> n;
};

struct SolverConfig {
    double rho = 1.0;
    double abs_tol = 1e-11;
    double rel_tol = 1e-10;
    int max_iterations = 200000;

    SdpOptions options() const;
};

struct VerifyConfig {
    std::vector<double> epsilons = {1e-2, 1e-3};
    int seeds = 20;
};

struct ExperimentConfig {
    int schema_version = kSchemaVersion;
    int num_qubits = 1;
    std::vector<GateConfig> gates;
    std::vector<EacConfig> eacs;
    /// Gates whose errors are fitted; empty means all gates.
    std::vector<std::string> estimate;
    std::map<std::string, GeneratorSpec> injection;
    SpamError spam;
    /// nullopt means exact probabilities.
    std::optional<long long> shots;
    std::uint64_t seed = 0;
    SolverConfig solver;
    WeightScheme weights = WeightScheme::kInverseNSquared;
    VerifyConfig verify;
};

/// Throws ConfigError on schema violations or unresolved names.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& cfg);
std::string serialize_config(const ExperimentConfig& cfg);

void validate_config(const ExperimentConfig& cfg);

nlohmann::json real_matrix_to_json(const RMatrix& m);
RMatrix real_matrix_from_json(const nlohmann::json& j);
/// Row-major array of [re, im] pairs.
nlohmann::json complex_matrix_to_json(const CMatrix& m);
CMatrix complex_matrix_from_json(const nlohmann::json& j);

MatrixBasis config_basis(const ExperimentConfig& cfg);
Lindbladian build_generator(const GeneratorSpec& spec, const MatrixBasis& basis);
GateSet build_gate_set(const ExperimentConfig& cfg);
UnitSequence build_unit(const GateSet& gates, const EacConfig& eac);
/// Injected errors indexed by gate label (empty matrix = none).
std::vector<Lindbladian> build_injection(const ExperimentConfig& cfg, const GateSet& gates);
std::vector<int> estimated_labels(const ExperimentConfig& cfg, const GateSet& gates);

/// {k, k+1, 2k, 4k, 8k} for unit period k, sorted.
std::vector<long long> default_schedule(int period);
std::vector<long long> eac_schedule(const EacConfig& eac, int period);

std::string to_string(WeightScheme scheme);

}  // namespace rlt

#endif  // RLT_CONFIG_H
