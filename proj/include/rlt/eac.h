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

#ifndef RLT_EAC_H
#define RLT_EAC_H

#include <string>
#include <vector>

#include "rlt/perturb.h"
#include "rlt/reps.h"

namespace rlt {

struct Gate {
    std::string name;
    Lindbladian ideal;
};

/// Gates indexed by label 0..n_g-1. Each ideal generator must give a CPTP
/// gate and be diagonalizable.
class GateSet {
   public:
    GateSet(MatrixBasis basis, std::vector<Gate> gates);

    const MatrixBasis& basis() const { return basis_; }
    /// Hilbert-space dimension d.
    int dim() const { return basis_.dim(); }
    /// Generator size m = d^2.
    int generator_dim() const { return basis_.size(); }
    int size() const { return static_cast<int>(gates_.size()); }
    const Gate& operator[](int label) const { return gates_.at(label); }
    const std::vector<Gate>& gates() const { return gates_; }

    /// Throws std::out_of_range for unknown names.
    int label_of(const std::string& name) const;

   private:
    MatrixBasis basis_;
    std::vector<Gate> gates_;
};

/// Gate labels in execution order; the first entry acts first.
struct UnitSequence {
    std::vector<int> labels;
};

void validate_sequence(const GateSet& gates, const UnitSequence& seq);

/// Raised when a gate or an intermediate composed generator of a unit breaks
/// the nonsingularity condition.
class UnitSingularityError : public SingularityError {
   public:
    UnitSingularityError(SingularityReport report, std::string gate_name, int prefix_length);

    /// Name of the offending gate, or empty for an intermediate product.
    const std::string& gate_name() const { return gate_name_; }
    /// Number of unit positions composed when the singularity appeared.
    int prefix_length() const { return prefix_length_; }

   private:
    std::string gate_name_;
    int prefix_length_;
};

inline constexpr int kDefaultMaxPeriod = 64;
inline constexpr double kDefaultPeriodTol = 1e-8;

/// Smallest k <= k_max with ||G^k - I||_F < tol; AperiodicError otherwise.
int period_of(const HSMatrix& g, int k_max = kDefaultMaxPeriod, double tol = kDefaultPeriodTol);

/// G_{i_nu} ... G_{i_1} of the ideal gates.
HSMatrix unit_ideal_gate(const GateSet& gates, const UnitSequence& seq);

/// Principal logarithm of the ideal unit product.
Lindbladian unit_ideal_lindbladian(const GateSet& gates, const UnitSequence& seq);

/// Singularity report of one gate's ideal generator.
SingularityReport gate_singularity(const Gate& gate);

/// Per-label first-order maps F_i of the unit: G_unit = exp[L_unit + sum_i
/// F_i(dL_i)] + O(dL^2). Labels absent from the unit get the zero map.
std::vector<SuperMap> compose_unit_maps(const GateSet& gates, const UnitSequence& seq);

struct AmplificationSplit {
    std::vector<SuperMap> amplified;
    std::vector<SuperMap> not_amplified;
};

/// f_amp_i = ssp_{L_unit} o F_i, f_not_amp_i = sspc_{L_unit} o F_i.
AmplificationSplit amp_split(const std::vector<SuperMap>& unit_maps,
                             const Lindbladian& unit_ideal);

struct AmplificationMaps {
    UnitSequence sequence;
    Lindbladian unit_ideal;
    int period = 1;
    std::vector<SuperMap> unit_maps;
    std::vector<SuperMap> amplified;
    std::vector<SuperMap> not_amplified;
    /// True for labels that occur in the unit.
    std::vector<bool> present;
};

/// Full analysis of one repetition unit: singularity screening, period,
/// composed maps and their amplification split.
AmplificationMaps analyze_unit(const GateSet& gates, const UnitSequence& seq,
                               int k_max = kDefaultMaxPeriod, double tol = kDefaultPeriodTol);

/// r L_unit + sum_j [r f_not_amp_j(dL_j) + n f_amp_j(dL_j)], r = n mod k.
/// `deltas` is indexed by gate label; an empty vector means no error.
Lindbladian predict_eac_generator(const AmplificationMaps& maps,
                                  const std::vector<Lindbladian>& deltas, long long n);

}  // namespace rlt

#endif  // RLT_EAC_H
