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

#include "betavqe/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include <Eigen/Eigenvalues>

#include "betavqe/csv.hpp"
#include "betavqe/error.hpp"

namespace betavqe {

std::vector<double> exact_spectrum(const PauliSum &h) {
    BETAVQE_ABORT_IF(h.n_qubits() > max_exact_qubits,
                     "exact diagonalisation limited to 12 qubits");
    const Eigen::MatrixXcd dense = to_dense_matrix(h);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        dense, Eigen::EigenvaluesOnly);
    BETAVQE_ABORT_IF(solver.info() != Eigen::Success,
                     "Hermitian eigensolver did not converge");
    const Eigen::VectorXd values = solver.eigenvalues();
    std::vector<double> out(values.data(), values.data() + values.size());
    std::sort(out.begin(), out.end());
    return out;
}

ExactSolution thermal_from_spectrum(std::vector<double> eigenvalues, double beta) {
    BETAVQE_ABORT_IF(eigenvalues.empty(), "empty spectrum");
    BETAVQE_ABORT_IF(!std::isfinite(beta) || beta < 0.0,
                     "inverse temperature must be finite and non-negative");
    std::sort(eigenvalues.begin(), eigenvalues.end());
    const double ground = eigenvalues.front();
    // Weights shifted by the ground energy: w_k = exp(-beta (E_k - E_0)) <= 1.
    double z_shifted = 0.0;
    double first = 0.0;
    for (const double e : eigenvalues) {
        const double w = std::exp(-beta * (e - ground));
        z_shifted += w;
        first += w * (e - ground);
    }
    const double mean_shift = first / z_shifted;
    double variance = 0.0;
    for (const double e : eigenvalues) {
        const double w = std::exp(-beta * (e - ground));
        const double d = e - ground - mean_shift;
        variance += w * d * d;
    }
    variance /= z_shifted;

    ExactSolution sol;
    sol.beta = beta;
    const double ln_z = -beta * ground + std::log(z_shifted);
    sol.free_energy = -ln_z;
    sol.energy = ground + mean_shift;
    sol.specific_heat = beta * beta * variance;
    sol.entropy = beta * sol.energy + ln_z;
    sol.eigenvalues = std::move(eigenvalues);
    return sol;
}

ExactSolution solve(const PauliSum &h, double beta) {
    return thermal_from_spectrum(exact_spectrum(h), beta);
}

double nearest_eigenvalue(std::span<const double> eigenvalues, double energy) {
    BETAVQE_ABORT_IF(eigenvalues.empty(), "empty spectrum");
    const auto it = std::lower_bound(eigenvalues.begin(), eigenvalues.end(), energy);
    if (it == eigenvalues.begin()) {
        return *it;
    }
    if (it == eigenvalues.end()) {
        return eigenvalues.back();
    }
    const double above = *it;
    const double below = *(it - 1);
    return (above - energy) < (energy - below) ? above : below;
}

double eigen_residual(const Statevector &psi, const PauliSum &h) {
    const std::vector<Complex> h_psi = apply_pauli_sum(psi, h);
    const double energy = inner_product(psi.amplitudes(), h_psi).real();
    double total = 0.0;
    const auto amps = psi.amplitudes();
    for (std::size_t k = 0; k < amps.size(); ++k) {
        total += std::norm(h_psi[k] - energy * amps[k]);
    }
    return std::sqrt(total);
}

std::vector<EigenbasisRow> eigenbasis_check(const PauliSum &h,
                                            const AnsatzCircuit &circuit,
                                            std::span<const double> theta,
                                            std::span<const Bitstring> samples,
                                            std::span<const double> eigenvalues) {
    std::vector<EigenbasisRow> rows;
    std::set<Bitstring> seen;
    for (const auto &x : samples) {
        if (!seen.insert(x).second) {
            continue;
        }
        const Statevector psi = circuit.prepare(x, theta);
        EigenbasisRow row;
        row.bits = x;
        row.energy = expectation(psi, h);
        row.nearest_exact = nearest_eigenvalue(eigenvalues, row.energy);
        row.abs_error = std::abs(row.energy - row.nearest_exact);
        row.residual = eigen_residual(psi, h);
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> classical_energies(const PauliSum &h) {
    BETAVQE_ABORT_IF(h.n_qubits() > max_exact_qubits,
                     "classical enumeration limited to 12 qubits");
    for (const auto &term : h.terms()) {
        BETAVQE_ABORT_IF_NOT(term.is_diagonal(),
                             "classical energies need a diagonal Hamiltonian");
    }
    const std::size_t dim = std::size_t{1} << h.n_qubits();
    std::vector<double> out(dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
        for (const auto &term : h.terms()) {
            out[k] += term.coefficient() * term.phase_on(k).real();
        }
    }
    return out;
}

void write_oracle_csv(std::ostream &out, std::span<const OracleRow> rows) {
    out << "rows,cols,gamma,beta,free_energy,ln_z,energy,specific_heat,entropy,"
           "ground_energy\n";
    for (const auto &row : rows) {
        const auto &s = row.solution;
        out << row.lattice.rows << ',' << row.lattice.cols << ','
            << csv_number(row.lattice.gamma) << ',' << csv_number(s.beta) << ','
            << csv_number(s.free_energy) << ',' << csv_number(s.ln_z()) << ','
            << csv_number(s.energy) << ',' << csv_number(s.specific_heat) << ','
            << csv_number(s.entropy) << ',' << csv_number(s.ground_energy())
            << '\n';
    }
}

} // namespace betavqe
