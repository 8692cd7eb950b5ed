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

#include "betavqe/differentiation.hpp"

#include <algorithm>
#include <numbers>

#include "betavqe/error.hpp"

namespace betavqe {

namespace {

void prepare_into(Statevector &state, const Bitstring &x,
                  const AnsatzCircuit &circuit, std::span<const double> theta) {
    if (state.n_qubits() != circuit.n_qubits()) {
        state = Statevector(circuit.n_qubits());
    }
    state.reset_to_basis(x);
    circuit.apply(state, theta);
}

} // namespace

void adjoint_energy_gradient_into(const Bitstring &x,
                                  const AnsatzCircuit &circuit,
                                  std::span<const double> theta,
                                  const PauliSum &h, AdjointWorkspace &work,
                                  double &energy, std::span<double> gradient) {
    BETAVQE_ABORT_IF(h.n_qubits() != circuit.n_qubits(),
                     "Hamiltonian and circuit qubit counts differ");
    BETAVQE_ABORT_IF(gradient.size() != circuit.n_params(),
                     "gradient buffer length does not match the circuit");
    circuit.check_parameters(theta);

    auto &psi = work.psi;
    auto &lambda = work.lambda;
    prepare_into(psi, x, circuit, theta);
    if (lambda.n_qubits() != circuit.n_qubits()) {
        lambda = Statevector(circuit.n_qubits());
    }
    apply_pauli_sum_into(psi.amplitudes(), h, lambda.amplitudes());
    energy = inner_product(psi.amplitudes(), lambda.amplitudes()).real();

    std::fill(gradient.begin(), gradient.end(), 0.0);
    const auto &gates = circuit.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        const GateOp &gate = *it;
        if (gate.param_index) {
            const Complex overlap =
                pauli_overlap(lambda.amplitudes(), psi.amplitudes(),
                              generator_of(gate.kind), gate.targets[0]);
            gradient[*gate.param_index] += overlap.imag();
        }
        if (it + 1 == gates.rend()) {
            break;
        }
        psi.apply(gate, theta, true);
        lambda.apply(gate, theta, true);
    }
}

EnergyGradient adjoint_energy_gradient(const Bitstring &x,
                                       const AnsatzCircuit &circuit,
                                       std::span<const double> theta,
                                       const PauliSum &h,
                                       AdjointWorkspace &work) {
    EnergyGradient out;
    out.gradient.assign(circuit.n_params(), 0.0);
    adjoint_energy_gradient_into(x, circuit, theta, h, work, out.energy,
                                 out.gradient);
    return out;
}

std::vector<double> grad_expectation_adjoint(const Bitstring &x,
                                             const AnsatzCircuit &circuit,
                                             std::span<const double> theta,
                                             const PauliSum &h) {
    AdjointWorkspace work(circuit.n_qubits());
    return adjoint_energy_gradient(x, circuit, theta, h, work).gradient;
}

std::vector<double> grad_expectation_shift(const Bitstring &x,
                                           const AnsatzCircuit &circuit,
                                           std::span<const double> theta,
                                           const PauliSum &h) {
    BETAVQE_ABORT_IF(h.n_qubits() != circuit.n_qubits(),
                     "Hamiltonian and circuit qubit counts differ");
    circuit.check_parameters(theta);
    std::vector<double> gradient(circuit.n_params(), 0.0);
    const auto &gates = circuit.gates();

    // Shift a single gate occurrence so that shared parameters are handled by
    // summing over occurrences.
    auto shifted_energy = [&](std::size_t gate_index, double shift) {
        Statevector state = init_basis_state(circuit.n_qubits(), x);
        for (std::size_t g = 0; g < gates.size(); ++g) {
            const GateOp &gate = gates[g];
            if (gate.kind == GateKind::CNOT) {
                state.apply_cnot(gate.targets[0], gate.targets[1]);
                continue;
            }
            double angle = theta[*gate.param_index];
            if (g == gate_index) {
                angle += shift;
            }
            state.apply_rotation(gate.kind, gate.targets[0], angle);
        }
        return expectation(state, h);
    };

    constexpr double half_pi = std::numbers::pi / 2.0;
    for (std::size_t g = 0; g < gates.size(); ++g) {
        const GateOp &gate = gates[g];
        if (!gate.param_index) {
            continue;
        }
        BETAVQE_ABORT_IF_NOT(is_rotation(gate.kind),
                             "shift rule needs Pauli-rotation gates");
        const double plus = shifted_energy(g, half_pi);
        const double minus = shifted_energy(g, -half_pi);
        gradient[*gate.param_index] += 0.5 * (plus - minus);
    }
    return gradient;
}

double circuit_energy(const Bitstring &x, const AnsatzCircuit &circuit,
                      std::span<const double> theta, const PauliSum &h) {
    return expectation(circuit.prepare(x, theta), h);
}

EnergyMoments circuit_energy_moments(const Bitstring &x,
                                     const AnsatzCircuit &circuit,
                                     std::span<const double> theta,
                                     const PauliSum &h, AdjointWorkspace &work) {
    BETAVQE_ABORT_IF(h.n_qubits() != circuit.n_qubits(),
                     "Hamiltonian and circuit qubit counts differ");
    prepare_into(work.psi, x, circuit, theta);
    if (work.lambda.n_qubits() != circuit.n_qubits()) {
        work.lambda = Statevector(circuit.n_qubits());
    }
    apply_pauli_sum_into(work.psi.amplitudes(), h, work.lambda.amplitudes());
    EnergyMoments out;
    out.energy = inner_product(work.psi.amplitudes(), work.lambda.amplitudes()).real();
    out.energy_sq =
        inner_product(work.lambda.amplitudes(), work.lambda.amplitudes()).real();
    return out;
}

} // namespace betavqe
