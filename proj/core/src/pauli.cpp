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

#include "betavqe/pauli.hpp"

#include <bit>
#include <cmath>
#include <map>

#include "betavqe/error.hpp"

namespace betavqe {

namespace {

constexpr std::array<std::complex<double>, 4> i_powers{
    std::complex<double>{1.0, 0.0}, std::complex<double>{0.0, 1.0},
    std::complex<double>{-1.0, 0.0}, std::complex<double>{0.0, -1.0}};

int popcount(std::uint64_t v) noexcept { return std::popcount(v); }

// Imaginary residue tolerated when folding complex products back to reals.
constexpr double imag_tolerance = 1e-12;

} // namespace

char to_char(Pauli op) noexcept {
    switch (op) {
    case Pauli::I:
        return 'I';
    case Pauli::X:
        return 'X';
    case Pauli::Y:
        return 'Y';
    case Pauli::Z:
        return 'Z';
    }
    return '?';
}

PauliString::PauliString(std::vector<Pauli> ops, double coefficient)
    : n_qubits_(static_cast<int>(ops.size())), coefficient_(coefficient) {
    BETAVQE_ABORT_IF(ops.empty(), "Pauli string needs at least one qubit");
    BETAVQE_ABORT_IF(n_qubits_ > max_qubits, "too many qubits");
    BETAVQE_ABORT_IF_NOT(std::isfinite(coefficient),
                         "Pauli coefficient must be finite");
    for (int q = 0; q < n_qubits_; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << q;
        switch (ops[static_cast<std::size_t>(q)]) {
        case Pauli::I:
            break;
        case Pauli::X:
            x_mask_ |= bit;
            break;
        case Pauli::Y:
            x_mask_ |= bit;
            z_mask_ |= bit;
            break;
        case Pauli::Z:
            z_mask_ |= bit;
            break;
        }
    }
}

PauliString::PauliString(int n_qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask, double coefficient)
    : n_qubits_(n_qubits), x_mask_(x_mask), z_mask_(z_mask),
      coefficient_(coefficient) {
    BETAVQE_ABORT_IF(n_qubits < 1 || n_qubits > max_qubits,
                     "qubit count out of range");
    const std::uint64_t valid = (std::uint64_t{1} << n_qubits) - 1;
    BETAVQE_ABORT_IF(((x_mask | z_mask) & ~valid) != 0,
                     "Pauli mask addresses a qubit outside the register");
    BETAVQE_ABORT_IF_NOT(std::isfinite(coefficient),
                         "Pauli coefficient must be finite");
}

PauliString PauliString::from_label(std::string_view label,
                                    double coefficient) {
    std::vector<Pauli> ops;
    ops.reserve(label.size());
    for (const char c : label) {
        switch (c) {
        case 'I':
            ops.push_back(Pauli::I);
            break;
        case 'X':
            ops.push_back(Pauli::X);
            break;
        case 'Y':
            ops.push_back(Pauli::Y);
            break;
        case 'Z':
            ops.push_back(Pauli::Z);
            break;
        default:
            BETAVQE_ABORT("Pauli label may only contain I, X, Y, Z");
        }
    }
    return {std::move(ops), coefficient};
}

Pauli PauliString::op(int qubit) const noexcept {
    const bool x = ((x_mask_ >> qubit) & 1U) != 0U;
    const bool z = ((z_mask_ >> qubit) & 1U) != 0U;
    if (x && z) {
        return Pauli::Y;
    }
    if (x) {
        return Pauli::X;
    }
    return z ? Pauli::Z : Pauli::I;
}

std::vector<Pauli> PauliString::ops() const {
    std::vector<Pauli> out(static_cast<std::size_t>(n_qubits_));
    for (int q = 0; q < n_qubits_; ++q) {
        out[static_cast<std::size_t>(q)] = op(q);
    }
    return out;
}

std::string PauliString::label() const {
    std::string out;
    out.reserve(static_cast<std::size_t>(n_qubits_));
    for (int q = 0; q < n_qubits_; ++q) {
        out.push_back(to_char(op(q)));
    }
    return out;
}

// P = i^{|x&z|} X^x Z^z, so P|k> = i^{|x&z|} (-1)^{|k&z|} |k ^ x>.
std::complex<double> PauliString::phase_on(std::uint64_t index) const noexcept {
    const int power = popcount(x_mask_ & z_mask_) + 2 * popcount(index & z_mask_);
    return i_powers[static_cast<std::size_t>(power & 3)];
}

PauliSum::PauliSum(int n_qubits, std::vector<PauliString> terms)
    : n_qubits_(n_qubits) {
    BETAVQE_ABORT_IF(n_qubits < 1 || n_qubits > PauliString::max_qubits,
                     "qubit count out of range");
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> position;
    std::vector<double> coefficients;
    for (const auto &term : terms) {
        BETAVQE_ABORT_IF(term.n_qubits() != n_qubits,
                         "Pauli term acts on a different register size");
        const auto key = std::make_pair(term.x_mask(), term.z_mask());
        const auto [it, inserted] = position.try_emplace(key, terms_.size());
        if (inserted) {
            terms_.push_back(term);
            coefficients.push_back(term.coefficient());
        } else {
            coefficients[it->second] += term.coefficient();
        }
    }
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        terms_[k] = PauliString(n_qubits_, terms_[k].x_mask(),
                                terms_[k].z_mask(), coefficients[k]);
    }
}

double PauliSum::one_norm() const noexcept {
    double total = 0.0;
    for (const auto &term : terms_) {
        total += std::abs(term.coefficient());
    }
    return total;
}

void LatticeSpec::validate() const {
    BETAVQE_ABORT_IF(rows < 1 || cols < 1, "lattice must have rows, cols >= 1");
    BETAVQE_ABORT_IF(n_sites() > PauliString::max_qubits,
                     "lattice has too many sites");
    BETAVQE_ABORT_IF(!std::isfinite(gamma) || gamma < 0.0,
                     "transverse field must be finite and non-negative");
}

std::vector<std::pair<int, int>> LatticeSpec::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count());
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c + 1 < cols; ++c) {
            out.emplace_back(site(r, c), site(r, c + 1));
        }
    }
    for (int r = 0; r + 1 < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            out.emplace_back(site(r, c), site(r + 1, c));
        }
    }
    return out;
}

std::size_t LatticeSpec::edge_count() const noexcept {
    if (rows < 1 || cols < 1) {
        return 0;
    }
    return static_cast<std::size_t>(rows * (cols - 1) + (rows - 1) * cols);
}

PauliSum build_tfim(const LatticeSpec &spec) {
    spec.validate();
    const int n = spec.n_sites();
    std::vector<PauliString> terms;
    for (const auto &[a, b] : spec.edges()) {
        const std::uint64_t z = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
        terms.emplace_back(n, 0, z, -1.0);
    }
    if (spec.gamma != 0.0) {
        for (int q = 0; q < n; ++q) {
            terms.emplace_back(n, std::uint64_t{1} << q, 0, -spec.gamma);
        }
    }
    return {n, std::move(terms)};
}

std::pair<std::complex<double>, PauliString> multiply(const PauliString &a,
                                                      const PauliString &b) {
    BETAVQE_ABORT_IF(a.n_qubits() != b.n_qubits(),
                     "cannot multiply Pauli strings of different sizes");
    const std::uint64_t x = a.x_mask() ^ b.x_mask();
    const std::uint64_t z = a.z_mask() ^ b.z_mask();
    // X^x1 Z^z1 X^x2 Z^z2 = (-1)^{|z1&x2|} X^x Z^z; re-express with i^{|x&z|}.
    const int power = popcount(a.x_mask() & a.z_mask()) +
                      popcount(b.x_mask() & b.z_mask()) - popcount(x & z) +
                      2 * popcount(a.z_mask() & b.x_mask());
    const auto phase = i_powers[static_cast<std::size_t>(((power % 4) + 4) % 4)];
    return {phase * a.coefficient() * b.coefficient(),
            PauliString(a.n_qubits(), x, z, 1.0)};
}

PauliSum square(const PauliSum &h) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> position;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> keys;
    std::vector<std::complex<double>> coefficients;
    for (const auto &left : h.terms()) {
        for (const auto &right : h.terms()) {
            const auto [coefficient, product] = multiply(left, right);
            const auto key = std::make_pair(product.x_mask(), product.z_mask());
            const auto [it, inserted] = position.try_emplace(key, keys.size());
            if (inserted) {
                keys.push_back(key);
                coefficients.push_back(coefficient);
            } else {
                coefficients[it->second] += coefficient;
            }
        }
    }
    const double scale = std::max(1.0, h.one_norm() * h.one_norm());
    std::vector<PauliString> terms;
    for (std::size_t k = 0; k < keys.size(); ++k) {
        BETAVQE_ABORT_IF(std::abs(coefficients[k].imag()) > imag_tolerance * scale,
                         "square of a Hermitian Pauli sum produced an "
                         "imaginary coefficient");
        const double value = coefficients[k].real();
        if (std::abs(value) <= imag_tolerance * scale) {
            continue;
        }
        terms.emplace_back(h.n_qubits(), keys[k].first, keys[k].second, value);
    }
    if (terms.empty()) {
        terms.emplace_back(h.n_qubits(), 0, 0, 0.0);
    }
    return {h.n_qubits(), std::move(terms)};
}

Eigen::MatrixXcd to_dense_matrix(const PauliSum &h) {
    BETAVQE_ABORT_IF(h.n_qubits() > max_dense_qubits,
                     "dense matrix requested for too many qubits");
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << h.n_qubits());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &term : h.terms()) {
        for (Eigen::Index col = 0; col < dim; ++col) {
            const auto k = static_cast<std::uint64_t>(col);
            const auto row = static_cast<Eigen::Index>(k ^ term.x_mask());
            out(row, col) += term.coefficient() * term.phase_on(k);
        }
    }
    return out;
}

} // namespace betavqe
