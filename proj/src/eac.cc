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

#include "rlt/eac.h"

#include <sstream>

namespace rlt {
namespace {

constexpr double kPhysicalTol = 1e-9;

}  // namespace

GateSet::GateSet(MatrixBasis basis, std::vector<Gate> gates)
    : basis_(std::move(basis)), gates_(std::move(gates)) {
    for (const Gate& gate : gates_) {
        if (gate.ideal.rows() != basis_.size() || gate.ideal.cols() != basis_.size()) {
            throw DimensionError("GateSet: generator of gate '" + gate.name +
                                 "' does not match the basis size");
        }
        const ChannelPhysicality phys = channel_physicality(expm(gate.ideal), basis_);
        if (phys.tp_residual > kPhysicalTol || phys.cj_min_eig < -kPhysicalTol) {
            std::ostringstream msg;
            msg << "GateSet: ideal gate '" << gate.name << "' is not CPTP (TP residual "
                << phys.tp_residual << ", min CJ eigenvalue " << phys.cj_min_eig << ")";
            throw NotPhysicalError(msg.str());
        }
        try {
            spectral_decompose(gate.ideal.cast<Complex>());
        } catch (const NotDiagonalizableError& e) {
            throw NotDiagonalizableError("GateSet: gate '" + gate.name + "': " + e.what());
        }
    }
}

int GateSet::label_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i) {
        if (gates_[i].name == name) {
            return i;
        }
    }
    throw std::out_of_range("GateSet: unknown gate '" + name + "'");
}

void validate_sequence(const GateSet& gates, const UnitSequence& seq) {
    if (seq.labels.empty()) {
        throw std::invalid_argument("unit sequence must contain at least one gate");
    }
    for (int label : seq.labels) {
        if (label < 0 || label >= gates.size()) {
            throw std::out_of_range("unit sequence: invalid gate label " + std::to_string(label));
        }
    }
}

UnitSingularityError::UnitSingularityError(SingularityReport report, std::string gate_name,
                                           int prefix_length)
    : SingularityError(std::move(report),
                       gate_name.empty()
                           ? "composed generator of the first " + std::to_string(prefix_length) +
                                 " unit gates"
                           : "gate '" + gate_name + "'"),
      gate_name_(std::move(gate_name)),
      prefix_length_(prefix_length) {}

int period_of(const HSMatrix& g, int k_max, double tol) {
    if (g.rows() != g.cols()) {
        throw DimensionError("period_of: expected a square matrix");
    }
    const RMatrix id = RMatrix::Identity(g.rows(), g.cols());
    RMatrix power = g;
    for (int k = 1; k <= k_max; ++k) {
        if ((power - id).norm() < tol) {
            return k;
        }
        power = power * g;
    }
    throw AperiodicError("period_of: no period <= " + std::to_string(k_max) +
                         " found; the gate is not cyclic");
}

HSMatrix unit_ideal_gate(const GateSet& gates, const UnitSequence& seq) {
    validate_sequence(gates, seq);
    HSMatrix g = HSMatrix::Identity(gates.generator_dim(), gates.generator_dim());
    for (int label : seq.labels) {
        g = expm(gates[label].ideal) * g;
    }
    return g;
}

Lindbladian unit_ideal_lindbladian(const GateSet& gates, const UnitSequence& seq) {
    return logm_principal_real(unit_ideal_gate(gates, seq));
}

SingularityReport gate_singularity(const Gate& gate) {
    return check_singularity(spectral_decompose(gate.ideal.cast<Complex>()));
}

std::vector<SuperMap> compose_unit_maps(const GateSet& gates, const UnitSequence& seq) {
    validate_sequence(gates, seq);
    const Eigen::Index m = gates.generator_dim();
    std::vector<SuperMap> maps(gates.size(), SuperMap::zero(m));
    std::vector<bool> active(gates.size(), false);

    const int first = seq.labels.front();
    maps[first] = SuperMap::identity(m);
    active[first] = true;

    CMatrix accumulated = gates[first].ideal.cast<Complex>();
    for (std::size_t j = 1; j < seq.labels.size(); ++j) {
        const int label = seq.labels[j];
        const CMatrix a = gates[label].ideal.cast<Complex>();
        const CMatrix c = logm_principal(CMatrix(expm(a) * expm(accumulated)));
        const SpectralDecomposition sd_c = spectral_decompose(c);
        const PerturbationMaps maps_c(sd_c);
        if (maps_c.singularity().is_singular) {
            throw UnitSingularityError(maps_c.singularity(), "", static_cast<int>(j + 1));
        }
        const SuperMap right = maps_c.cmr() * build_maps(spectral_decompose(accumulated)).dcr();
        const SuperMap left = maps_c.cml() * build_maps(spectral_decompose(a)).dcl();
        for (int i = 0; i < gates.size(); ++i) {
            if (active[i]) {
                maps[i] = right * maps[i];
            }
        }
        if (active[label]) {
            maps[label] += left;
        } else {
            maps[label] = left;
            active[label] = true;
        }
        accumulated = c;
    }
    return maps;
}

AmplificationSplit amp_split(const std::vector<SuperMap>& unit_maps,
                             const Lindbladian& unit_ideal) {
    const RepetitionSplit split = repetition_split(spectral_decompose(unit_ideal.cast<Complex>()));
    AmplificationSplit out;
    for (const SuperMap& f : unit_maps) {
        out.amplified.push_back(split.ssp * f);
        out.not_amplified.push_back(split.sspc * f);
    }
    return out;
}

AmplificationMaps analyze_unit(const GateSet& gates, const UnitSequence& seq, int k_max,
                               double tol) {
    validate_sequence(gates, seq);
    AmplificationMaps out;
    out.sequence = seq;
    out.present.assign(gates.size(), false);
    for (int label : seq.labels) {
        if (!out.present[label]) {
            const SingularityReport report = gate_singularity(gates[label]);
            if (report.is_singular) {
                throw UnitSingularityError(report, gates[label].name, 0);
            }
        }
        out.present[label] = true;
    }
    const HSMatrix unit = unit_ideal_gate(gates, seq);
    out.period = period_of(unit, k_max, tol);
    out.unit_ideal = logm_principal_real(unit);
    out.unit_maps = compose_unit_maps(gates, seq);
    AmplificationSplit split = amp_split(out.unit_maps, out.unit_ideal);
    out.amplified = std::move(split.amplified);
    out.not_amplified = std::move(split.not_amplified);
    return out;
}

Lindbladian predict_eac_generator(const AmplificationMaps& maps,
                                  const std::vector<Lindbladian>& deltas, long long n) {
    if (n < 1) {
        throw std::invalid_argument("predict_eac_generator: n must be >= 1");
    }
    const long long r = n % maps.period;
    Lindbladian out = static_cast<double>(r) * maps.unit_ideal;
    for (std::size_t i = 0; i < deltas.size() && i < maps.unit_maps.size(); ++i) {
        if (deltas[i].size() == 0 || !maps.present[i]) {
            continue;
        }
        out += static_cast<double>(r) * maps.not_amplified[i].apply_real(deltas[i]) +
               static_cast<double>(n) * maps.amplified[i].apply_real(deltas[i]);
    }
    return out;
}

}  // namespace rlt
