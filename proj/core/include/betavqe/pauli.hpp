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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace betavqe {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

[[nodiscard]] char to_char(Pauli op) noexcept;

/**
 * @brief Weighted tensor product of single-qubit Pauli operators.
 *
 * Stored in symplectic form: qubit q carries X if bit q of `x_mask` is set,
 * Z if bit q of `z_mask` is set, and Y if both are. The operator represented
 * is coefficient * (op_{n-1} ⊗ ... ⊗ op_0).
 */
class PauliString {
  public:
    static constexpr int max_qubits = 62;

    PauliString() = default;
    PauliString(std::vector<Pauli> ops, double coefficient);
    PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask,
                double coefficient);

    /// Parse a label written qubit 0 first, e.g. "ZZI" acts with Z on 0 and 1.
    static PauliString from_label(std::string_view label, double coefficient);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] double coefficient() const noexcept { return coefficient_; }
    [[nodiscard]] std::uint64_t x_mask() const noexcept { return x_mask_; }
    [[nodiscard]] std::uint64_t z_mask() const noexcept { return z_mask_; }
    [[nodiscard]] Pauli op(int qubit) const noexcept;
    [[nodiscard]] std::vector<Pauli> ops() const;
    [[nodiscard]] bool is_identity() const noexcept {
        return x_mask_ == 0 && z_mask_ == 0;
    }
    /// Diagonal in the computational basis (only I and Z factors).
    [[nodiscard]] bool is_diagonal() const noexcept { return x_mask_ == 0; }

    /// Qubit-0-first label such as "ZZI".
    [[nodiscard]] std::string label() const;

    /**
     * @brief Action on a basis state: P|k> = phase * |k ^ x_mask>.
     *
     * The coefficient is not included.
     */
    [[nodiscard]] std::complex<double> phase_on(std::uint64_t index) const noexcept;

  private:
    int n_qubits_ = 0;
    std::uint64_t x_mask_ = 0;
    std::uint64_t z_mask_ = 0;
    double coefficient_ = 0.0;
};

/**
 * @brief Real linear combination of Pauli strings on a fixed register.
 *
 * Terms with identical operator patterns are merged on construction and the
 * resulting order is deterministic (first occurrence wins).
 */
class PauliSum {
  public:
    PauliSum() = default;
    PauliSum(int n_qubits, std::vector<PauliString> terms);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const std::vector<PauliString> &terms() const noexcept {
        return terms_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

    /// Sum of |coefficient|, an upper bound on the spectral radius.
    [[nodiscard]] double one_norm() const noexcept;

  private:
    int n_qubits_ = 0;
    std::vector<PauliString> terms_;
};

/// Open-boundary rectangular lattice with sites numbered row-major.
struct LatticeSpec {
    int rows = 1;
    int cols = 1;
    double gamma = 0.0;

    [[nodiscard]] int n_sites() const noexcept { return rows * cols; }
    [[nodiscard]] int site(int row, int col) const noexcept {
        return row * cols + col;
    }
    /// Nearest-neighbour pairs: horizontal bonds row-major, then vertical bonds
    /// row-major. Each pair is (lower index, higher index).
    [[nodiscard]] std::vector<std::pair<int, int>> edges() const;
    [[nodiscard]] std::size_t edge_count() const noexcept;

    void validate() const;
};

/// H = -sum_<ij> Z_i Z_j - gamma sum_i X_i on the lattice.
[[nodiscard]] PauliSum build_tfim(const LatticeSpec &spec);

/// H * H with Pauli products folded into real coefficients.
[[nodiscard]] PauliSum square(const PauliSum &h);

/// Product of two Pauli strings, returned as (phase * coefficients, string with
/// unit coefficient).
[[nodiscard]] std::pair<std::complex<double>, PauliString>
multiply(const PauliString &a, const PauliString &b);

constexpr int max_dense_qubits = 14;

/// Dense 2^n x 2^n matrix, qubit 0 is the least-significant index bit.
[[nodiscard]] Eigen::MatrixXcd to_dense_matrix(const PauliSum &h);

} // namespace betavqe
