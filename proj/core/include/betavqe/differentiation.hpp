// Copyright 2026 The betavqe Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

#include "betavqe/ansatz.hpp"
#include "betavqe/pauli.hpp"
#include "betavqe/statevector.hpp"

namespace betavqe {

/// Energy <x|U^dag H U|x> and its gradient with respect to theta.
struct EnergyGradient {
    double energy = 0.0;
    std::vector<double> gradient;
};

/// Per-thread scratch for the reverse sweep: forward state and adjoint state.
struct AdjointWorkspace {
    AdjointWorkspace() = default;
    explicit AdjointWorkspace(int n_qubits) : psi(n_qubits), lambda(n_qubits) {}

    Statevector psi;
    Statevector lambda;
};

/**
 * @brief Exact gradient of <x|U^dag H U|x> by one reverse sweep.
 *
 * Forward-propagates |psi> = U|x>, forms |lambda> = H|psi>, then walks the
 * gates backwards un-applying each one from both vectors. For a rotation
 * exp(-i a P / 2) on the way back, dE/da = Im <lambda|P|psi> evaluated on
 * the states just after that gate. Cost is O(#gates * 2^n) with two state
 * vectors of storage.
 */
void adjoint_energy_gradient_into(const Bitstring &x,
                                  const AnsatzCircuit &circuit,
                                  std::span<const double> theta,
                                  const PauliSum &h, AdjointWorkspace &work,
                                  double &energy, std::span<double> gradient);

[[nodiscard]] EnergyGradient
adjoint_energy_gradient(const Bitstring &x, const AnsatzCircuit &circuit,
                        std::span<const double> theta, const PauliSum &h,
                        AdjointWorkspace &work);

/// Gradient via the reverse sweep (allocates its own workspace).
[[nodiscard]] std::vector<double>
grad_expectation_adjoint(const Bitstring &x, const AnsatzCircuit &circuit,
                         std::span<const double> theta, const PauliSum &h);

/// Gradient via the two-term shift rule, one shifted pair per gate occurrence.
[[nodiscard]] std::vector<double>
grad_expectation_shift(const Bitstring &x, const AnsatzCircuit &circuit,
                       std::span<const double> theta, const PauliSum &h);

/// <x|U^dag H U|x>
[[nodiscard]] double circuit_energy(const Bitstring &x,
                                    const AnsatzCircuit &circuit,
                                    std::span<const double> theta,
                                    const PauliSum &h);

/// <H> and <H^2> = ||H psi||^2 for psi = U|x>.
struct EnergyMoments {
    double energy = 0.0;
    double energy_sq = 0.0;
};

[[nodiscard]] EnergyMoments circuit_energy_moments(const Bitstring &x,
                                                   const AnsatzCircuit &circuit,
                                                   std::span<const double> theta,
                                                   const PauliSum &h,
                                                   AdjointWorkspace &work);

} // namespace betavqe
