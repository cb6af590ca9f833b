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

#include "rlt/sim.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace rlt {
namespace {

constexpr double kCptpTol = 1e-9;

CMatrix ket_projector(const CVector& psi) { return psi * psi.adjoint(); }

// Single-qubit preparations |0>, |1>, |+>, |+i>.
std::vector<std::pair<std::string, CMatrix>> single_qubit_states() {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    CVector zero(2), one(2), plus(2), plus_i(2);
    zero << 1.0, 0.0;
    one << 0.0, 1.0;
    plus << s, s;
    plus_i << s, i * s;
    return {{"0", ket_projector(zero)},
            {"1", ket_projector(one)},
            {"+", ket_projector(plus)},
            {"+i", ket_projector(plus_i)}};
}

// Projectors onto the eigenbasis of X, Y or Z (+1 outcome first).
std::vector<CMatrix> single_qubit_measurement(char axis) {
    const CMatrix p = pauli_string(std::string(1, axis));
    const CMatrix id = CMatrix::Identity(2, 2);
    return {0.5 * (id + p), 0.5 * (id - p)};
}

CMatrix axis_rotation(double angle, double nx, double ny, double nz) {
    const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
    const CMatrix generator =
        (nx * pauli_string("X") + ny * pauli_string("Y") + nz * pauli_string("Z")) / norm;
    return expm(CMatrix(Complex(0.0, -0.5 * angle) * generator));
}

CMatrix on_every_qubit(const CMatrix& single, int num_qubits) {
    CMatrix out = single;
    for (int q = 1; q < num_qubits; ++q) {
        out = kron(out, single);
    }
    return out;
}

HSMatrix depolarizing_channel(double p, const MatrixBasis& basis) {
    HSMatrix g = (1.0 - p) * HSMatrix::Identity(basis.size(), basis.size());
    g(0, 0) = 1.0;
    return g;
}

}  // namespace

std::size_t ProbabilityTable::num_entries() const {
    std::size_t n = 0;
    for (const auto& prep : values) {
        for (const auto& povm : prep) {
            n += povm.size();
        }
    }
    return n;
}

ProbabilityTable ShotTable::frequencies() const {
    ProbabilityTable out;
    out.values.resize(counts.size());
    for (std::size_t p = 0; p < counts.size(); ++p) {
        out.values[p].resize(counts[p].size());
        for (std::size_t m = 0; m < counts[p].size(); ++m) {
            for (long long c : counts[p][m]) {
                out.values[p][m].push_back(static_cast<double>(c) / static_cast<double>(shots));
            }
        }
    }
    return out;
}

SpamModel qpt_circuit_set(int num_qubits) {
    if (num_qubits != 1 && num_qubits != 2) {
        throw std::invalid_argument("qpt_circuit_set: only 1 or 2 qubits are supported");
    }
    const MatrixBasis basis = pauli_basis(num_qubits);
    const auto states = single_qubit_states();
    SpamModel spam;
    if (num_qubits == 1) {
        for (const auto& [label, rho] : states) {
            spam.preparation_labels.push_back(label);
            spam.preparations.push_back(vectorize_hermitian(rho, basis));
        }
    } else {
        for (const auto& [la, ra] : states) {
            for (const auto& [lb, rb] : states) {
                spam.preparation_labels.push_back(la + "," + lb);
                spam.preparations.push_back(vectorize_hermitian(kron(ra, rb), basis));
            }
        }
    }
    const std::string axes = "XYZ";
    if (num_qubits == 1) {
        for (char a : axes) {
            Povm povm{std::string(1, a), {}};
            for (const CMatrix& e : single_qubit_measurement(a)) {
                povm.effects.push_back(vectorize_hermitian(e, basis));
            }
            spam.povms.push_back(std::move(povm));
        }
    } else {
        for (char a : axes) {
            for (char b : axes) {
                Povm povm{std::string{a, b}, {}};
                for (const CMatrix& ea : single_qubit_measurement(a)) {
                    for (const CMatrix& eb : single_qubit_measurement(b)) {
                        povm.effects.push_back(vectorize_hermitian(kron(ea, eb), basis));
                    }
                }
                spam.povms.push_back(std::move(povm));
            }
        }
    }
    return spam;
}

SpamModel apply_spam_error(const SpamModel& ideal, const SpamError& error, int num_qubits) {
    const MatrixBasis basis = pauli_basis(num_qubits);
    const HSMatrix depol = depolarizing_channel(error.depolarizing, basis);
    const HSMatrix prep_rot = hs_of_unitary(
        on_every_qubit(axis_rotation(error.rotation, 1.0, 1.0, 1.0), num_qubits), basis);
    const HSMatrix meas_rot = hs_of_unitary(
        on_every_qubit(axis_rotation(error.rotation, 1.0, -1.0, 1.0), num_qubits), basis);
    const HSMatrix prep_channel = prep_rot * depol;
    // Measurement noise acts on the state right before the ideal POVM.
    const HSMatrix meas_channel = depol * meas_rot;

    SpamModel out = ideal;
    for (RVector& rho : out.preparations) {
        rho = prep_channel * rho;
    }
    for (Povm& povm : out.povms) {
        for (RVector& effect : povm.effects) {
            effect = meas_channel.transpose() * effect;
        }
    }
    return out;
}

void validate_spam(const SpamModel& spam, const MatrixBasis& basis, double tol) {
    auto min_eig = [](const CMatrix& a) {
        Eigen::SelfAdjointEigenSolver<CMatrix> s(0.5 * (a + a.adjoint()), Eigen::EigenvaluesOnly);
        return s.eigenvalues().minCoeff();
    };
    for (std::size_t p = 0; p < spam.preparations.size(); ++p) {
        const CMatrix rho = devectorize(spam.preparations[p].cast<Complex>(), basis);
        if (std::abs(rho.trace() - 1.0) > tol || min_eig(rho) < -tol) {
            throw NotPhysicalError("SPAM model: preparation " + std::to_string(p) +
                                   " is not a density matrix");
        }
    }
    const CMatrix id = CMatrix::Identity(basis.dim(), basis.dim());
    for (const Povm& povm : spam.povms) {
        CMatrix total = CMatrix::Zero(basis.dim(), basis.dim());
        for (const RVector& e : povm.effects) {
            const CMatrix effect = devectorize(e.cast<Complex>(), basis);
            if (min_eig(effect) < -tol) {
                throw NotPhysicalError("SPAM model: POVM '" + povm.label +
                                       "' has a non-PSD effect");
            }
            total += effect;
        }
        if ((total - id).norm() > tol) {
            throw NotPhysicalError("SPAM model: POVM '" + povm.label +
                                   "' does not sum to the identity");
        }
    }
}

ProbabilityTable channel_probabilities(const HSMatrix& g, const SpamModel& spam) {
    ProbabilityTable out;
    out.values.resize(spam.preparations.size());
    for (std::size_t p = 0; p < spam.preparations.size(); ++p) {
        const RVector out_state = g * spam.preparations[p];
        for (const Povm& povm : spam.povms) {
            std::vector<double> probs;
            probs.reserve(povm.effects.size());
            for (const RVector& effect : povm.effects) {
                probs.push_back(effect.dot(out_state));
            }
            out.values[p].push_back(std::move(probs));
        }
    }
    return out;
}

HSMatrix noisy_gate(const GateSet& gates, int label, const Lindbladian& delta) {
    const Gate& gate = gates[label];
    Lindbladian generator = gate.ideal;
    if (delta.size() != 0) {
        if (delta.rows() != generator.rows() || delta.cols() != generator.cols()) {
            throw DimensionError("noisy_gate: error generator of '" + gate.name +
                                 "' has the wrong size");
        }
        generator += delta;
    }
    const HSMatrix g = expm(generator);
    const ChannelPhysicality phys = channel_physicality(g, gates.basis());
    if (phys.tp_residual > kCptpTol || phys.cj_min_eig < -kCptpTol) {
        std::ostringstream msg;
        msg << "injected gate '" << gate.name << "' is not CPTP (TP residual " << phys.tp_residual
            << ", min CJ eigenvalue " << phys.cj_min_eig << ")";
        throw NotPhysicalError(msg.str());
    }
    return g;
}

HSMatrix noisy_unit_gate(const GateSet& gates, const UnitSequence& seq,
                         const std::vector<Lindbladian>& deltas) {
    validate_sequence(gates, seq);
    std::vector<HSMatrix> cache(gates.size());
    HSMatrix unit = HSMatrix::Identity(gates.generator_dim(), gates.generator_dim());
    for (int label : seq.labels) {
        if (cache[label].size() == 0) {
            const Lindbladian empty;
            cache[label] = noisy_gate(gates, label,
                                      static_cast<std::size_t>(label) < deltas.size()
                                          ? deltas[label]
                                          : empty);
        }
        unit = cache[label] * unit;
    }
    return unit;
}

ProbabilityTable exact_probabilities(const GateSet& gates, const UnitSequence& seq,
                                     const std::vector<Lindbladian>& deltas,
                                     const SpamModel& spam, long long n) {
    if (n < 0) {
        throw std::invalid_argument("exact_probabilities: n must be >= 0");
    }
    validate_spam(spam, gates.basis());
    const HSMatrix unit = noisy_unit_gate(gates, seq, deltas);
    return channel_probabilities(matrix_power(unit, n), spam);
}

ShotTable sample_counts(const ProbabilityTable& probs, long long shots, std::uint64_t seed) {
    if (shots <= 0) {
        throw std::invalid_argument("sample_counts: shots must be positive");
    }
    std::mt19937_64 rng(seed);
    ShotTable out;
    out.shots = shots;
    out.seed = seed;
    out.counts.resize(probs.values.size());
    for (std::size_t p = 0; p < probs.values.size(); ++p) {
        for (const auto& dist : probs.values[p]) {
            const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
            if (std::abs(total - 1.0) > 1e-8 ||
                std::any_of(dist.begin(), dist.end(), [](double v) { return v < -1e-8; })) {
                throw std::invalid_argument("sample_counts: not a probability distribution");
            }
            // Conditional binomial construction of a multinomial draw.
            std::vector<long long> counts(dist.size(), 0);
            long long remaining = shots;
            double mass = 1.0;
            for (std::size_t x = 0; x < dist.size() && remaining > 0; ++x) {
                const double px = std::clamp(dist[x], 0.0, 1.0);
                if (x + 1 == dist.size()) {
                    counts[x] = remaining;
                    break;
                }
                const double q = mass > 0.0 ? std::clamp(px / mass, 0.0, 1.0) : 0.0;
                std::binomial_distribution<long long> draw(remaining, q);
                counts[x] = draw(rng);
                remaining -= counts[x];
                mass -= px;
            }
            out.counts[p].push_back(std::move(counts));
        }
    }
    return out;
}

}  // namespace rlt
