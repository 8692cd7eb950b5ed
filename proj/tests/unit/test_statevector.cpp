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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "betavqe/error.hpp"
#include "betavqe/statevector.hpp"
#include "test_support.hpp"

using namespace betavqe;
using Catch::Approx;

namespace {

using Matrix2 = Eigen::Matrix2cd;

/// Dense single-qubit rotation exp(-i a P / 2) built from cos/sin directly.
Matrix2 rotation_matrix(GateKind kind, double a) {
    const double c = std::cos(a / 2.0);
    const double s = std::sin(a / 2.0);
    const Complex i{0.0, 1.0};
    Matrix2 m;
    switch (kind) {
    case GateKind::RX:
        m << c, -i * s, -i * s, c;
        break;
    case GateKind::RY:
        m << c, -s, s, c;
        break;
    case GateKind::RZ:
        m << std::exp(-i * a / 2.0), 0, 0, std::exp(i * a / 2.0);
        break;
    default:
        FAIL("not a rotation");
    }
    return m;
}

/// Embed a single-qubit matrix acting on `qubit` into an n-qubit operator.
Eigen::MatrixXcd embed(const Matrix2 &u, int qubit, int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const int bit = static_cast<int>((col >> qubit) & 1);
        for (int row_bit = 0; row_bit < 2; ++row_bit) {
            const Eigen::Index row = (col & ~(Eigen::Index{1} << qubit)) |
                                     (Eigen::Index{row_bit} << qubit);
            out(row, col) = u(row_bit, bit);
        }
    }
    return out;
}

Eigen::MatrixXcd cnot_matrix(int control, int target, int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const Eigen::Index row =
            ((col >> control) & 1) != 0 ? (col ^ (Eigen::Index{1} << target)) : col;
        out(row, col) = 1.0;
    }
    return out;
}

} // namespace

TEST_CASE("basis state preparation", "[statevector]") {
    const Statevector psi = init_basis_state(3, Bitstring::from_string("101"));
    CHECK(psi.dimension() == 8);
    CHECK(psi[5] == Complex{1.0, 0.0});
    CHECK(psi.norm() == Approx(1.0));
    CHECK_THROWS_AS(init_basis_state(2, Bitstring(3, 0)), Error);
    CHECK_THROWS_AS(Statevector(0), Error);
}

TEST_CASE("Bitstring text is most-significant qubit first", "[statevector][bitstring]") {
    const Bitstring b = Bitstring::from_string("110");
    CHECK(b.size() == 3);
    CHECK(b.value() == 6);
    CHECK_FALSE(b[0]);
    CHECK(b[1]);
    CHECK(b[2]);
    CHECK(b.to_string() == "110");
    CHECK_THROWS_AS(Bitstring::from_string("12"), Error);
}

TEST_CASE("RX(pi) on |0> gives -i|1>", "[statevector][gates]") {
    Statevector psi(1);
    psi.apply_rotation(GateKind::RX, 0, std::numbers::pi);
    CHECK(std::abs(psi[0]) < 1e-15);
    CHECK(std::abs(psi[1] - Complex{0.0, -1.0}) < 1e-15);
}

TEST_CASE("RY(pi/2) on |0> gives |+>", "[statevector][gates]") {
    Statevector psi(1);
    psi.apply_rotation(GateKind::RY, 0, std::numbers::pi / 2.0);
    CHECK(psi[0].real() == Approx(std::sqrt(0.5)).margin(1e-15));
    CHECK(psi[1].real() == Approx(std::sqrt(0.5)).margin(1e-15));
}

TEST_CASE("CNOT flips target only when control is set", "[statevector][gates]") {
    // qubit 1 control, qubit 0 target: |10> (value 2) -> |11> (value 3)
    Statevector psi = init_basis_state(2, Bitstring(2, 2));
    psi.apply_cnot(1, 0);
    CHECK(psi[3] == Complex{1.0, 0.0});
    Statevector phi = init_basis_state(2, Bitstring(2, 1));
    phi.apply_cnot(1, 0);
    CHECK(phi[1] == Complex{1.0, 0.0});
    CHECK_THROWS_AS(phi.apply_cnot(0, 0), Error);
    CHECK_THROWS_AS(phi.apply_cnot(0, 2), Error);
}

TEST_CASE("gate kernels match dense matrices", "[statevector][gates][oracle]") {
    Rng rng(11);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const Statevector psi = test::random_state(n, rng);
            const Eigen::VectorXcd v = test::to_eigen(psi);
            const auto angle = test::random_angles(1, rng)[0];
            for (int q = 0; q < n; ++q) {
                for (GateKind kind : {GateKind::RX, GateKind::RY, GateKind::RZ}) {
                    Statevector out = psi;
                    out.apply_rotation(kind, q, angle);
                    const Eigen::VectorXcd expected = embed(rotation_matrix(kind, angle), q, n) * v;
                    CHECK((test::to_eigen(out) - expected).cwiseAbs().maxCoeff() < 1e-12);
                }
                for (int t = 0; t < n; ++t) {
                    if (t == q) {
                        continue;
                    }
                    Statevector out = psi;
                    out.apply_cnot(q, t);
                    const Eigen::VectorXcd expected = cnot_matrix(q, t, n) * v;
                    CHECK((test::to_eigen(out) - expected).cwiseAbs().maxCoeff() < 1e-15);
                }
            }
        }
    }
}

TEST_CASE("adjoint gate application inverts the gate", "[statevector][gates]") {
    Rng rng(5);
    const Statevector psi = test::random_state(3, rng);
    const std::vector<double> theta{0.37, -1.2};
    for (const GateOp &g : {GateOp::rotation(GateKind::RX, 0, 0),
                            GateOp::rotation(GateKind::RY, 1, 1),
                            GateOp::rotation(GateKind::RZ, 2, 0), GateOp::cnot(2, 0)}) {
        Statevector out = psi;
        out.apply(g, theta);
        out.apply(g, theta, /*adjoint=*/true);
        CHECK((test::to_eigen(out) - test::to_eigen(psi)).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("gate validation", "[statevector][gates]") {
    CHECK_THROWS_AS(GateOp::rotation(GateKind::CNOT, 0, 0), Error);
    const GateOp bad = GateOp::rotation(GateKind::RX, 4, 0);
    CHECK_THROWS_AS(bad.validate(3), Error);
    Statevector psi(2);
    const std::vector<double> theta{0.1};
    CHECK_THROWS_AS(psi.apply(GateOp::rotation(GateKind::RY, 0, 3), theta), Error);
}

TEST_CASE("norm is preserved over a 10^4-gate chain", "[statevector][property]") {
    Rng rng(99);
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<int> qubit(0, 5);
    std::uniform_real_distribution<double> angle(-4.0, 4.0);
    Statevector psi = test::random_state(6, rng);
    for (int step = 0; step < 10000; ++step) {
        const int k = kind(rng);
        const int q = qubit(rng);
        if (k == 3) {
            psi.apply_cnot(q, (q + 1 + qubit(rng) % 5) % 6);
        } else {
            psi.apply_rotation(static_cast<GateKind>(k), q, angle(rng));
        }
    }
    CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
}

TEST_CASE("expectation equals the dense quadratic form", "[statevector][oracle]") {
    Rng rng(3);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 15; ++trial) {
            const PauliSum h = test::random_pauli_sum(n, 1 + trial % 6, rng);
            const Statevector psi = test::random_state(n, rng);
            const Eigen::VectorXcd v = test::to_eigen(psi);
            const Complex expected = v.dot(to_dense_matrix(h) * v);
            CHECK(std::abs(expectation(psi, h) - expected.real()) < 1e-10);
            CHECK(std::abs(expected.imag()) < 1e-12);
        }
    }
    // TFIM on 2x2 as well.
    const PauliSum tfim = build_tfim({2, 2, 1.7});
    const Statevector psi = test::random_state(4, rng);
    const Eigen::VectorXcd v = test::to_eigen(psi);
    CHECK(std::abs(expectation(psi, tfim) - v.dot(to_dense_matrix(tfim) * v).real()) < 1e-10);
}

TEST_CASE("apply_pauli_sum equals dense matrix-vector product", "[statevector][oracle]") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 4;
        const PauliSum h = test::random_pauli_sum(n, 5, rng);
        const Statevector psi = test::random_state(n, rng);
        const std::vector<Complex> hpsi = apply_pauli_sum(psi, h);
        const Eigen::VectorXcd expected = to_dense_matrix(h) * test::to_eigen(psi);
        for (std::size_t k = 0; k < hpsi.size(); ++k) {
            CHECK(std::abs(hpsi[k] - expected[static_cast<Eigen::Index>(k)]) < 1e-12);
        }
    }
}

TEST_CASE("||H psi||^2 equals <H^2>", "[statevector][property]") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 4;
        const PauliSum h = trial % 2 == 0 ? test::random_pauli_sum(n, 6, rng)
                                          : build_tfim({1, n, 0.5 + 0.1 * trial});
        const Statevector psi = test::random_state(n, rng);
        const std::vector<Complex> hpsi = apply_pauli_sum(psi, h);
        const double norm_sq = inner_product(hpsi, hpsi).real();
        CHECK(std::abs(norm_sq - expectation(psi, square(h))) < 1e-8);
    }
}

TEST_CASE("pauli_overlap matches explicit application", "[statevector]") {
    Rng rng(31);
    const Statevector a = test::random_state(3, rng);
    const Statevector b = test::random_state(3, rng);
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
        for (int q = 0; q < 3; ++q) {
            std::vector<Pauli> ops(3, Pauli::I);
            ops[static_cast<std::size_t>(q)] = p;
            const PauliSum single(3, {PauliString(ops, 1.0)});
            const std::vector<Complex> pb = apply_pauli_sum(b, single);
            const Complex expected = inner_product(a.amplitudes(), pb);
            CHECK(std::abs(pauli_overlap(a.amplitudes(), b.amplitudes(), p, q) - expected) <
                  1e-13);
        }
    }
}
