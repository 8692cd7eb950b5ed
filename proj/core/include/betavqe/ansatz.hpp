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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "betavqe/pauli.hpp"
#include "betavqe/statevector.hpp"

namespace betavqe {

/// Rotation parameters consumed by one two-qubit SU(4) block.
constexpr std::size_t su4_block_params = 15;

/**
 * @brief Ordered gate list with a flat parameter vector.
 *
 * Built either as the brickwork ansatz over a lattice (one SU(4) block per
 * edge per layer) or directly from a gate list for small hand-made circuits.
 * Immutable once built.
 */
class AnsatzCircuit {
  public:
    AnsatzCircuit() = default;

    /// Wrap an arbitrary gate list; every parameter index must be < n_params.
    static AnsatzCircuit from_gates(int n_qubits, std::vector<GateOp> gates,
                                    std::size_t n_params);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t n_params() const noexcept { return n_params_; }
    [[nodiscard]] int depth() const noexcept { return depth_; }
    [[nodiscard]] const std::optional<LatticeSpec> &lattice() const noexcept {
        return lattice_;
    }
    [[nodiscard]] const std::vector<GateOp> &gates() const noexcept {
        return gates_;
    }
    [[nodiscard]] std::size_t cnot_count() const noexcept;

    /// Apply every gate in order to `state`.
    void apply(Statevector &state, std::span<const double> theta) const;
    /// Apply the inverse circuit (gates reversed, angles negated).
    void apply_inverse(Statevector &state, std::span<const double> theta) const;

    /// U_theta |x>
    [[nodiscard]] Statevector prepare(const Bitstring &x,
                                      std::span<const double> theta) const;

    void check_parameters(std::span<const double> theta) const;

  private:
    friend AnsatzCircuit build_ansatz(const LatticeSpec &, int);

    int n_qubits_ = 0;
    std::size_t n_params_ = 0;
    int depth_ = 0;
    std::optional<LatticeSpec> lattice_;
    std::vector<GateOp> gates_;
};

/// Append the 15-rotation, 3-CNOT SU(4) block on (a, b) using parameters
/// first_param .. first_param + 14.
void append_su4_block(std::vector<GateOp> &gates, int a, int b,
                      std::size_t first_param);

/// `depth` layers, each placing one SU(4) block on every lattice edge.
[[nodiscard]] AnsatzCircuit build_ansatz(const LatticeSpec &lattice, int depth);

[[nodiscard]] inline std::size_t param_count(const AnsatzCircuit &circuit) {
    return circuit.n_params();
}

/**
 * Line-per-gate text form:
 *
 *     # betavqe-circuit v1
 *     qubits 4
 *     params 120
 *     RZ 0 p0
 *     CNOT 1 0
 *
 * CNOT lines list control then target.
 */
void write_circuit_text(std::ostream &out, const AnsatzCircuit &circuit);
[[nodiscard]] std::string to_text(const AnsatzCircuit &circuit);
[[nodiscard]] AnsatzCircuit read_circuit_text(std::istream &in);

} // namespace betavqe
