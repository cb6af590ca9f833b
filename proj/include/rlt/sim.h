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

#ifndef RLT_SIM_H
#define RLT_SIM_H

#include <cstdint>
#include <string>
#include <vector>

#include "rlt/eac.h"
#include "rlt/reps.h"

namespace rlt {

struct Povm {
    std::string label;
    /// Effect coordinates <<Pi_x| in the basis, one per outcome.
    std::vector<RVector> effects;
};

/// Preparations |rho>> and POVMs, all in basis coordinates.
struct SpamModel {
    std::vector<std::string> preparation_labels;
    std::vector<RVector> preparations;
    std::vector<Povm> povms;
};

/// Strengths of the SPAM error channels. Preparations get depolarizing noise
/// followed by a rotation about the (1,1,1) axis on every qubit; measurements
/// get a rotation about (1,-1,1) followed by the same depolarizing noise.
struct SpamError {
    double depolarizing = 0.0;
    double rotation = 0.0;

    bool is_zero() const { return depolarizing == 0.0 && rotation == 0.0; }
};

/// Informationally complete 1- or 2-qubit set: products of |0>,|1>,|+>,|+i>
/// preparations and Pauli-basis projective measurements.
SpamModel qpt_circuit_set(int num_qubits);

/// Applies the SPAM error channels to an ideal model.
SpamModel apply_spam_error(const SpamModel& ideal, const SpamError& error, int num_qubits);

/// Throws NotPhysicalError unless every state is a unit-trace PSD operator
/// and every POVM sums to the identity with PSD effects.
void validate_spam(const SpamModel& spam, const MatrixBasis& basis, double tol = 1e-9);

/// Indexed [preparation][povm][outcome].
struct ProbabilityTable {
    std::vector<std::vector<std::vector<double>>> values;

    std::size_t num_entries() const;
};

struct ShotTable {
    std::vector<std::vector<std::vector<long long>>> counts;
    long long shots = 0;
    std::uint64_t seed = 0;

    /// counts / shots, in the same layout.
    ProbabilityTable frequencies() const;
};

/// p_x = <<Pi_x| G |rho>> for every preparation and POVM outcome.
ProbabilityTable channel_probabilities(const HSMatrix& g, const SpamModel& spam);

/// Noisy gate exp(L_i + dL_i); throws NotPhysicalError if it is not CPTP.
HSMatrix noisy_gate(const GateSet& gates, int label, const Lindbladian& delta);

/// Noisy unit product; `deltas` indexed by gate label, empty entries mean
/// no error.
HSMatrix noisy_unit_gate(const GateSet& gates, const UnitSequence& seq,
                         const std::vector<Lindbladian>& deltas);

/// Outcome probabilities of the n-fold repeated unit.
ProbabilityTable exact_probabilities(const GateSet& gates, const UnitSequence& seq,
                                     const std::vector<Lindbladian>& deltas,
                                     const SpamModel& spam, long long n);

/// Independent multinomial draws of `shots` per (preparation, POVM).
ShotTable sample_counts(const ProbabilityTable& probs, long long shots, std::uint64_t seed);

}  // namespace rlt

#endif  // RLT_SIM_H
