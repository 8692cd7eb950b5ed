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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "betavqe/ansatz.hpp"
#include "betavqe/bitstring.hpp"
#include "betavqe/pauli.hpp"
#include "betavqe/statevector.hpp"

namespace betavqe {

constexpr int max_exact_qubits = 12;

/// Thermal quantities of exp(-beta H) / Z from a full spectrum.
struct ExactSolution {
    std::vector<double> eigenvalues; ///< ascending
    double beta = 0.0;
    double free_energy = 0.0; ///< -ln Z (the bound on the variational loss)
    double energy = 0.0;
    double specific_heat = 0.0;
    double entropy = 0.0;

    [[nodiscard]] double ln_z() const noexcept { return -free_energy; }
    /// F = -ln Z / beta
    [[nodiscard]] double physical_free_energy() const noexcept {
        return free_energy / beta;
    }
    [[nodiscard]] double ground_energy() const noexcept {
        return eigenvalues.front();
    }
};

/// Ascending eigenvalues of the dense Hamiltonian.
[[nodiscard]] std::vector<double> exact_spectrum(const PauliSum &h);

/// Thermal quantities at `beta` from a precomputed ascending spectrum.
[[nodiscard]] ExactSolution thermal_from_spectrum(std::vector<double> eigenvalues,
                                                  double beta);

[[nodiscard]] ExactSolution solve(const PauliSum &h, double beta);

/// beta^2 Var(E) under the Gibbs weights.
[[nodiscard]] inline double exact_specific_heat(const ExactSolution &sol) {
    return sol.specific_heat;
}

/// Eigenvalue closest to `energy` in an ascending spectrum.
[[nodiscard]] double nearest_eigenvalue(std::span<const double> eigenvalues,
                                        double energy);

/// ||(H - E)|psi>|| with E = <psi|H|psi>.
[[nodiscard]] double eigen_residual(const Statevector &psi, const PauliSum &h);

struct EigenbasisRow {
    Bitstring bits;
    double energy = 0.0;
    double nearest_exact = 0.0;
    double abs_error = 0.0;
    double residual = 0.0;
};

/// One row per distinct bitstring (in first-seen order).
[[nodiscard]] std::vector<EigenbasisRow>
eigenbasis_check(const PauliSum &h, const AnsatzCircuit &circuit,
                 std::span<const double> theta, std::span<const Bitstring> samples,
                 std::span<const double> eigenvalues);

/// Energy of each bitstring under a diagonal (I/Z-only) Hamiltonian.
[[nodiscard]] std::vector<double> classical_energies(const PauliSum &h);

/// CSV table keyed by (rows, cols, gamma, beta).
struct OracleRow {
    LatticeSpec lattice;
    ExactSolution solution;
};
void write_oracle_csv(std::ostream &out, std::span<const OracleRow> rows);

} // namespace betavqe
