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

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "betavqe/bitstring.hpp"
#include "betavqe/pauli.hpp"

namespace betavqe {

using Complex = std::complex<double>;

enum class GateKind : std::uint8_t { RX, RY, RZ, CNOT };

[[nodiscard]] std::string_view to_string(GateKind kind) noexcept;
[[nodiscard]] constexpr bool is_rotation(GateKind kind) noexcept {
    return kind != GateKind::CNOT;
}
/// Pauli generator P of a rotation R_P(a) = exp(-i a P / 2).
[[nodiscard]] Pauli generator_of(GateKind kind);

/**
 * @brief One gate of a circuit.
 *
 * Rotations act on `targets[0]` and read their angle from theta[param_index].
 * CNOT uses `targets[0]` as control and `targets[1]` as target.
 */
struct GateOp {
    GateKind kind = GateKind::RZ;
    std::array<int, 2> targets{0, -1};
    std::optional<std::size_t> param_index;

    static GateOp rotation(GateKind kind, int qubit, std::size_t param);
    static GateOp cnot(int control, int target);

    [[nodiscard]] int arity() const noexcept {
        return kind == GateKind::CNOT ? 2 : 1;
    }
    void validate(int n_qubits) const;

    friend bool operator==(const GateOp &, const GateOp &) = default;
};

constexpr int max_statevector_qubits = 26;

/// Dense amplitude vector over n qubits; qubit 0 is the least-significant bit.
class Statevector {
  public:
    Statevector() = default;
    explicit Statevector(int n_qubits);
    Statevector(int n_qubits, std::vector<Complex> amplitudes);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const noexcept {
        return amps_[i];
    }
    [[nodiscard]] double norm() const noexcept;

    void reset_to_basis(const Bitstring &x);

    /// Apply R_P(angle) to `qubit`.
    void apply_rotation(GateKind kind, int qubit, double angle);
    void apply_cnot(int control, int target);
    /// Apply the gate, or its inverse when `adjoint` is set.
    void apply(const GateOp &gate, std::span<const double> theta,
               bool adjoint = false);

  private:
    int n_qubits_ = 0;
    std::vector<Complex> amps_;
};

/// |x>, amplitude 1 at the index whose bit q is x_q.
[[nodiscard]] Statevector init_basis_state(int n_qubits, const Bitstring &x);

[[nodiscard]] Statevector apply_gate(Statevector state, const GateOp &gate,
                                     std::span<const double> theta);

/// <psi|H|psi>; aborts if the imaginary residue exceeds 1e-10.
[[nodiscard]] double expectation(const Statevector &state, const PauliSum &h);

/// H|psi> (not normalised).
[[nodiscard]] std::vector<Complex> apply_pauli_sum(const Statevector &state,
                                                   const PauliSum &h);
void apply_pauli_sum_into(std::span<const Complex> in, const PauliSum &h,
                          std::span<Complex> out);

/// <a|b>
[[nodiscard]] Complex inner_product(std::span<const Complex> a,
                                    std::span<const Complex> b) noexcept;

/// <bra| P_qubit |ket> for a single-qubit Pauli P.
[[nodiscard]] Complex pauli_overlap(std::span<const Complex> bra,
                                    std::span<const Complex> ket, Pauli p,
                                    int qubit) noexcept;

} // namespace betavqe
