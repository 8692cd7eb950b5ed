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

#include "betavqe/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "betavqe/error.hpp"

namespace betavqe {

AnsatzCircuit AnsatzCircuit::from_gates(int n_qubits, std::vector<GateOp> gates,
                                        std::size_t n_params) {
    BETAVQE_ABORT_IF(n_qubits < 1 || n_qubits > max_statevector_qubits,
                     "circuit qubit count out of range");
    for (const auto &gate : gates) {
        gate.validate(n_qubits);
        if (gate.param_index) {
            BETAVQE_ABORT_IF(*gate.param_index >= n_params,
                             "gate parameter index exceeds parameter count");
        }
    }
    AnsatzCircuit circuit;
    circuit.n_qubits_ = n_qubits;
    circuit.n_params_ = n_params;
    circuit.gates_ = std::move(gates);
    return circuit;
}

std::size_t AnsatzCircuit::cnot_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(gates_.begin(), gates_.end(), [](const GateOp &g) {
            return g.kind == GateKind::CNOT;
        }));
}

void AnsatzCircuit::check_parameters(std::span<const double> theta) const {
    BETAVQE_ABORT_IF(theta.size() != n_params_,
                     "parameter vector length does not match the circuit");
    for (const double v : theta) {
        BETAVQE_ABORT_IF_NOT(std::isfinite(v), "circuit parameter is not finite");
    }
}

void AnsatzCircuit::apply(Statevector &state,
                          std::span<const double> theta) const {
    check_parameters(theta);
    BETAVQE_ABORT_IF(state.n_qubits() != n_qubits_,
                     "state and circuit qubit counts differ");
    for (const auto &gate : gates_) {
        state.apply(gate, theta);
    }
}

void AnsatzCircuit::apply_inverse(Statevector &state,
                                  std::span<const double> theta) const {
    check_parameters(theta);
    BETAVQE_ABORT_IF(state.n_qubits() != n_qubits_,
                     "state and circuit qubit counts differ");
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        state.apply(*it, theta, true);
    }
}

Statevector AnsatzCircuit::prepare(const Bitstring &x,
                                   std::span<const double> theta) const {
    Statevector state = init_basis_state(n_qubits_, x);
    apply(state, theta);
    return state;
}

void append_su4_block(std::vector<GateOp> &gates, int a, int b,
                      std::size_t first_param) {
    std::size_t p = first_param;
    auto rot = [&](GateKind kind, int q) {
        gates.push_back(GateOp::rotation(kind, q, p++));
    };
    rot(GateKind::RZ, a);
    rot(GateKind::RY, a);
    rot(GateKind::RZ, a);
    rot(GateKind::RZ, b);
    rot(GateKind::RY, b);
    rot(GateKind::RZ, b);
    gates.push_back(GateOp::cnot(b, a));
    rot(GateKind::RZ, a);
    rot(GateKind::RY, b);
    gates.push_back(GateOp::cnot(a, b));
    rot(GateKind::RY, b);
    gates.push_back(GateOp::cnot(b, a));
    rot(GateKind::RZ, a);
    rot(GateKind::RY, a);
    rot(GateKind::RZ, a);
    rot(GateKind::RZ, b);
    rot(GateKind::RY, b);
    rot(GateKind::RZ, b);
}

AnsatzCircuit build_ansatz(const LatticeSpec &lattice, int depth) {
    lattice.validate();
    BETAVQE_ABORT_IF(depth < 1, "circuit depth must be at least 1");
    BETAVQE_ABORT_IF(lattice.n_sites() > max_statevector_qubits,
                     "lattice too large for statevector simulation");
    const auto edges = lattice.edges();
    AnsatzCircuit circuit;
    circuit.n_qubits_ = lattice.n_sites();
    circuit.depth_ = depth;
    circuit.lattice_ = lattice;
    circuit.gates_.reserve(static_cast<std::size_t>(depth) * edges.size() * 18);
    std::size_t next_param = 0;
    for (int layer = 0; layer < depth; ++layer) {
        for (const auto &[a, b] : edges) {
            append_su4_block(circuit.gates_, a, b, next_param);
            next_param += su4_block_params;
        }
    }
    circuit.n_params_ = next_param;
    return circuit;
}

void write_circuit_text(std::ostream &out, const AnsatzCircuit &circuit) {
    out << "# betavqe-circuit v1\n";
    out << "qubits " << circuit.n_qubits() << '\n';
    out << "params " << circuit.n_params() << '\n';
    for (const auto &gate : circuit.gates()) {
        out << to_string(gate.kind) << ' ' << gate.targets[0];
        if (gate.kind == GateKind::CNOT) {
            out << ' ' << gate.targets[1];
        } else {
            out << " p" << *gate.param_index;
        }
        out << '\n';
    }
}

std::string to_text(const AnsatzCircuit &circuit) {
    std::ostringstream out;
    write_circuit_text(out, circuit);
    return out.str();
}

AnsatzCircuit read_circuit_text(std::istream &in) {
    std::string line;
    BETAVQE_ABORT_IF(!std::getline(in, line) || line != "# betavqe-circuit v1",
                     "missing circuit header");
    int n_qubits = 0;
    std::size_t n_params = 0;
    std::string key;
    BETAVQE_ABORT_IF(!(in >> key >> n_qubits) || key != "qubits",
                     "expected 'qubits N'");
    BETAVQE_ABORT_IF(!(in >> key >> n_params) || key != "params",
                     "expected 'params N'");
    std::vector<GateOp> gates;
    std::string kind;
    while (in >> kind) {
        int q0 = 0;
        BETAVQE_ABORT_IF(!(in >> q0), "gate line missing qubit");
        if (kind == "CNOT") {
            int q1 = 0;
            BETAVQE_ABORT_IF(!(in >> q1), "CNOT line missing target");
            gates.push_back(GateOp::cnot(q0, q1));
            continue;
        }
        std::string param;
        BETAVQE_ABORT_IF(!(in >> param) || param.size() < 2 || param[0] != 'p',
                         "rotation line missing parameter");
        const auto index = static_cast<std::size_t>(std::stoull(param.substr(1)));
        GateKind gk{};
        if (kind == "RX") {
            gk = GateKind::RX;
        } else if (kind == "RY") {
            gk = GateKind::RY;
        } else if (kind == "RZ") {
            gk = GateKind::RZ;
        } else {
            BETAVQE_ABORT("unknown gate kind in circuit text");
        }
        gates.push_back(GateOp::rotation(gk, q0, index));
    }
    return AnsatzCircuit::from_gates(n_qubits, std::move(gates), n_params);
}

} // namespace betavqe
