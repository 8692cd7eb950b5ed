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

#include "betavqe/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "betavqe/error.hpp"

namespace betavqe {

namespace {

constexpr Complex imag_unit{0.0, 1.0};

// Calls fn(i0, i1) for every index pair differing only in bit `qubit`.
template <typename Fn>
inline void for_each_pair(std::size_t dim, int qubit, Fn &&fn) {
    const std::size_t stride = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = base; j < base + stride; ++j) {
            fn(j, j + stride);
        }
    }
}

} // namespace

std::string_view to_string(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::CNOT:
        return "CNOT";
    }
    return "?";
}

Pauli generator_of(GateKind kind) {
    switch (kind) {
    case GateKind::RX:
        return Pauli::X;
    case GateKind::RY:
        return Pauli::Y;
    case GateKind::RZ:
        return Pauli::Z;
    case GateKind::CNOT:
        break;
    }
    BETAVQE_ABORT("CNOT has no rotation generator");
}

GateOp GateOp::rotation(GateKind kind, int qubit, std::size_t param) {
    BETAVQE_ABORT_IF_NOT(is_rotation(kind), "not a rotation gate kind");
    return GateOp{kind, {qubit, -1}, param};
}

GateOp GateOp::cnot(int control, int target) {
    return GateOp{GateKind::CNOT, {control, target}, std::nullopt};
}

void GateOp::validate(int n_qubits) const {
    BETAVQE_ABORT_IF(targets[0] < 0 || targets[0] >= n_qubits,
                     "gate target index out of range");
    if (kind == GateKind::CNOT) {
        BETAVQE_ABORT_IF(targets[1] < 0 || targets[1] >= n_qubits,
                         "CNOT target index out of range");
        BETAVQE_ABORT_IF(targets[0] == targets[1],
                         "CNOT control and target must differ");
        BETAVQE_ABORT_IF(param_index.has_value(), "CNOT takes no parameter");
    } else {
        BETAVQE_ABORT_IF_NOT(param_index.has_value(),
                             "rotation gate needs a parameter index");
    }
}

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
    BETAVQE_ABORT_IF(n_qubits < 1 || n_qubits > max_statevector_qubits,
                     "statevector qubit count out of range");
    amps_.assign(std::size_t{1} << n_qubits, Complex{});
    amps_[0] = 1.0;
}

Statevector::Statevector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    BETAVQE_ABORT_IF(n_qubits < 1 || n_qubits > max_statevector_qubits,
                     "statevector qubit count out of range");
    BETAVQE_ABORT_IF(amps_.size() != (std::size_t{1} << n_qubits),
                     "amplitude vector length must be 2^n");
}

double Statevector::norm() const noexcept {
    double total = 0.0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return std::sqrt(total);
}

void Statevector::reset_to_basis(const Bitstring &x) {
    BETAVQE_ABORT_IF(x.size() != n_qubits_,
                     "bitstring length does not match qubit count");
    std::fill(amps_.begin(), amps_.end(), Complex{});
    amps_[x.value()] = 1.0;
}

void Statevector::apply_rotation(GateKind kind, int qubit, double angle) {
    BETAVQE_ABORT_IF(qubit < 0 || qubit >= n_qubits_,
                     "rotation target out of range");
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    Complex *a = amps_.data();
    switch (kind) {
    case GateKind::RX:
        for_each_pair(amps_.size(), qubit, [=](std::size_t i0, std::size_t i1) {
            const Complex v0 = a[i0];
            const Complex v1 = a[i1];
            // -i s v = (s v.imag, -s v.real)
            a[i0] = c * v0 + Complex{s * v1.imag(), -s * v1.real()};
            a[i1] = c * v1 + Complex{s * v0.imag(), -s * v0.real()};
        });
        break;
    case GateKind::RY:
        for_each_pair(amps_.size(), qubit, [=](std::size_t i0, std::size_t i1) {
            const Complex v0 = a[i0];
            const Complex v1 = a[i1];
            a[i0] = c * v0 - s * v1;
            a[i1] = s * v0 + c * v1;
        });
        break;
    case GateKind::RZ: {
        const Complex lower{c, -s};
        const Complex upper{c, s};
        for_each_pair(amps_.size(), qubit, [=](std::size_t i0, std::size_t i1) {
            a[i0] *= lower;
            a[i1] *= upper;
        });
        break;
    }
    case GateKind::CNOT:
        BETAVQE_ABORT("CNOT is not a rotation");
    }
}

void Statevector::apply_cnot(int control, int target) {
    BETAVQE_ABORT_IF(control < 0 || control >= n_qubits_ || target < 0 ||
                         target >= n_qubits_ || control == target,
                     "invalid CNOT qubits");
    const std::size_t control_mask = std::size_t{1} << control;
    Complex *a = amps_.data();
    for_each_pair(amps_.size(), target, [=](std::size_t i0, std::size_t i1) {
        if ((i0 & control_mask) != 0U) {
            std::swap(a[i0], a[i1]);
        }
    });
}

void Statevector::apply(const GateOp &gate, std::span<const double> theta,
                        bool adjoint) {
    if (gate.kind == GateKind::CNOT) {
        apply_cnot(gate.targets[0], gate.targets[1]);
        return;
    }
    BETAVQE_ABORT_IF_NOT(gate.param_index.has_value(),
                         "rotation gate needs a parameter index");
    BETAVQE_ABORT_IF(*gate.param_index >= theta.size(),
                     "parameter index out of range");
    const double angle = theta[*gate.param_index];
    apply_rotation(gate.kind, gate.targets[0], adjoint ? -angle : angle);
}

Statevector init_basis_state(int n_qubits, const Bitstring &x) {
    Statevector state(n_qubits);
    state.reset_to_basis(x);
    return state;
}

Statevector apply_gate(Statevector state, const GateOp &gate,
                       std::span<const double> theta) {
    gate.validate(state.n_qubits());
    state.apply(gate, theta);
    return state;
}

double expectation(const Statevector &state, const PauliSum &h) {
    BETAVQE_ABORT_IF(state.n_qubits() != h.n_qubits(),
                     "qubit count mismatch between state and operator");
    const auto psi = state.amplitudes();
    Complex total{};
    for (const auto &term : h.terms()) {
        Complex partial{};
        const std::uint64_t flip = term.x_mask();
        if (term.is_diagonal()) {
            for (std::size_t k = 0; k < psi.size(); ++k) {
                partial += term.phase_on(k) * std::norm(psi[k]);
            }
        } else {
            for (std::size_t k = 0; k < psi.size(); ++k) {
                partial += std::conj(psi[k ^ flip]) * term.phase_on(k) * psi[k];
            }
        }
        total += term.coefficient() * partial;
    }
    const double scale = std::max(1.0, h.one_norm());
    BETAVQE_ABORT_IF(std::abs(total.imag()) > 1e-10 * scale,
                     "expectation value has a non-negligible imaginary part");
    return total.real();
}

void apply_pauli_sum_into(std::span<const Complex> in, const PauliSum &h,
                          std::span<Complex> out) {
    BETAVQE_ABORT_IF(in.size() != (std::size_t{1} << h.n_qubits()) ||
                         out.size() != in.size(),
                     "qubit count mismatch between state and operator");
    std::fill(out.begin(), out.end(), Complex{});
    for (const auto &term : h.terms()) {
        const double c = term.coefficient();
        const std::uint64_t flip = term.x_mask();
        for (std::size_t k = 0; k < in.size(); ++k) {
            out[k ^ flip] += c * term.phase_on(k) * in[k];
        }
    }
}

std::vector<Complex> apply_pauli_sum(const Statevector &state,
                                     const PauliSum &h) {
    BETAVQE_ABORT_IF(state.n_qubits() != h.n_qubits(),
                     "qubit count mismatch between state and operator");
    std::vector<Complex> out(state.dimension());
    apply_pauli_sum_into(state.amplitudes(), h, out);
    return out;
}

Complex inner_product(std::span<const Complex> a,
                      std::span<const Complex> b) noexcept {
    double re = 0.0;
    double im = 0.0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
        // conj(a) * b
        re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
        im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
    }
    return {re, im};
}

Complex pauli_overlap(std::span<const Complex> bra, std::span<const Complex> ket,
                      Pauli p, int qubit) noexcept {
    const std::size_t dim = std::min(bra.size(), ket.size());
    Complex total{};
    switch (p) {
    case Pauli::I:
        return inner_product(bra, ket);
    case Pauli::X:
        for_each_pair(dim, qubit, [&](std::size_t i0, std::size_t i1) {
            total += std::conj(bra[i0]) * ket[i1] + std::conj(bra[i1]) * ket[i0];
        });
        break;
    case Pauli::Y:
        // Y|0> = i|1>, Y|1> = -i|0>
        for_each_pair(dim, qubit, [&](std::size_t i0, std::size_t i1) {
            total += std::conj(bra[i1]) * ket[i0] - std::conj(bra[i0]) * ket[i1];
        });
        total *= imag_unit;
        break;
    case Pauli::Z:
        for_each_pair(dim, qubit, [&](std::size_t i0, std::size_t i1) {
            total += std::conj(bra[i0]) * ket[i0] - std::conj(bra[i1]) * ket[i1];
        });
        break;
    }
    return total;
}

} // namespace betavqe
