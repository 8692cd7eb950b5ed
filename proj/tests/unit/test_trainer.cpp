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
#include <filesystem>
#include <numbers>

#include "betavqe/differentiation.hpp"
#include "betavqe/error.hpp"
#include "betavqe/exact.hpp"
#include "betavqe/trainer.hpp"
#include "test_support.hpp"

using namespace betavqe;
using Catch::Approx;

namespace {

/// Exact variational loss sum_x p(x) [ln p(x) + beta E_theta(x)] by brute force.
double exact_loss(const MadeModel &model, const AnsatzCircuit &circuit,
                  std::span<const double> theta, const PauliSum &h, double beta) {
    const int n = model.n_sites();
    double total = 0.0;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        const Bitstring x(n, v);
        const double lp = model.log_prob(x);
        total += std::exp(lp) * (lp + beta * circuit_energy(x, circuit, theta, h));
    }
    return total;
}

struct Problem {
    LatticeSpec lattice;
    PauliSum h;
    AnsatzCircuit circuit;
    MadeModel model;
    std::vector<double> theta;
};

Problem random_problem(int rows, int cols, double gamma, std::uint64_t seed) {
    Rng rng(seed);
    const LatticeSpec lattice{rows, cols, gamma};
    AnsatzCircuit circuit = build_ansatz(lattice, 1);
    auto theta = test::random_angles(circuit.n_params(), rng, 1.0);
    MadeModel model = test::random_made(lattice.n_sites(), 6, rng, 0.8);
    return {lattice, build_tfim(lattice), std::move(circuit), std::move(model), std::move(theta)};
}

} // namespace

TEST_CASE("enumerated inputs carry the exact distribution", "[trainer]") {
    Rng rng(1);
    const MadeModel model = test::random_made(5, 7, rng);
    const WeightedInputs inputs = enumerate_inputs(model);
    CHECK(inputs.exact);
    CHECK(inputs.size() == 32);
    double total = 0.0;
    for (double w : inputs.weights) {
        total += w;
    }
    CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("group_samples merges duplicates into frequencies", "[trainer]") {
    const std::vector<BitSample> samples{{Bitstring(2, 3), -1.0},
                                         {Bitstring(2, 0), -2.0},
                                         {Bitstring(2, 3), -1.0},
                                         {Bitstring(2, 3), -1.0}};
    const WeightedInputs g = group_samples(samples);
    CHECK_FALSE(g.exact);
    CHECK(g.batch == 4);
    REQUIRE(g.size() == 2);
    CHECK(g.bits[0] == Bitstring(2, 0));
    CHECK(g.weights[0] == 0.25);
    CHECK(g.weights[1] == 0.75);
    CHECK(g.log_probs[1] == -1.0);
}

TEST_CASE("loss statistics: sample mean and standard error", "[trainer]") {
    // Rewards 1, 2, 3, 3 from a batch of four samples.
    WeightedInputs g;
    g.bits = {Bitstring(2, 0), Bitstring(2, 1), Bitstring(2, 2)};
    g.weights = {0.25, 0.25, 0.5};
    g.log_probs = {0, 0, 0};
    g.batch = 4;
    const std::vector<double> rewards{1.0, 2.0, 3.0};
    const LossEstimate s = loss_statistics(g, rewards);
    CHECK(s.mean == Approx(2.25));
    // unbiased variance of {1,2,3,3} = 11/12; stderr = sqrt(var / 4)
    CHECK(s.std_error == Approx(std::sqrt(11.0 / 12.0 / 4.0)));

    g.exact = true;
    const LossEstimate e = loss_statistics(g, rewards);
    CHECK(e.std_error == Approx(std::sqrt(0.6875)));
}

TEST_CASE("per-sample reward is ln p + beta E", "[trainer]") {
    const Problem p = random_problem(1, 3, 1.1, 42);
    const Bitstring x(3, 5);
    CHECK(per_sample_reward(x, p.theta, p.circuit, p.h, 0.7, p.model) ==
          Approx(p.model.log_prob(x) + 0.7 * circuit_energy(x, p.circuit, p.theta, p.h)));
}

TEST_CASE("enumerated REINFORCE gradient equals finite differences of the exact loss",
          "[trainer][oracle]") {
    for (int n = 2; n <= 4; ++n) {
        const Problem p = random_problem(1, n, 1.5, 100 + static_cast<std::uint64_t>(n));
        const double beta = 0.8;
        const VariationalState state{p.model, p.circuit, p.theta};
        const WeightedInputs inputs = enumerate_inputs(p.model);
        const BatchEvaluation eval = evaluate_batch(state, p.h, beta, inputs, true);

        CHECK(eval.loss.mean == Approx(exact_loss(p.model, p.circuit, p.theta, p.h, beta))
                                    .margin(1e-12));

        const std::vector<double> phi(p.model.parameters().begin(), p.model.parameters().end());
        const auto fd_phi = test::central_difference(
            [&](std::span<const double> q) {
                MadeModel m = p.model;
                m.set_parameters(q);
                return exact_loss(m, p.circuit, p.theta, p.h, beta);
            },
            phi, 1e-6);
        CHECK(test::max_abs_diff(eval.grad_phi, fd_phi) < 1e-6);

        const auto fd_theta = test::central_difference(
            [&](std::span<const double> t) {
                return exact_loss(p.model, p.circuit, t, p.h, beta);
            },
            p.theta, 1e-6);
        CHECK(test::max_abs_diff(eval.grad_theta, fd_theta) < 1e-6);

        // Direct entry points agree with the batched evaluation.
        CHECK(test::max_abs_diff(grad_phi(p.model, inputs, eval.rewards), eval.grad_phi) < 1e-12);
        CHECK(test::max_abs_diff(grad_theta(inputs, p.circuit, p.theta, p.h, beta),
                                 eval.grad_theta) < 1e-12);
    }
}

TEST_CASE("baseline does not change the enumerated gradient", "[trainer][property]") {
    const Problem p = random_problem(2, 2, 2.0, 9);
    const WeightedInputs inputs = enumerate_inputs(p.model);
    std::vector<double> rewards(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        rewards[i] = per_sample_reward(inputs.bits[i], p.theta, p.circuit, p.h, 1.0, p.model);
    }
    const auto with = grad_phi(p.model, inputs, rewards, Baseline::BatchMean);
    const auto without = grad_phi(p.model, inputs, rewards, Baseline::None);
    CHECK(test::max_abs_diff(with, without) < 1e-9);
}

TEST_CASE("thread count does not change results", "[trainer][determinism]") {
    const Problem p = random_problem(2, 3, 1.0, 5);
    const VariationalState state{p.model, p.circuit, p.theta};
    const WeightedInputs inputs = enumerate_inputs(p.model);
    const BatchEvaluation one = evaluate_batch(state, p.h, 1.0, inputs, true, 1);
    const BatchEvaluation four = evaluate_batch(state, p.h, 1.0, inputs, true, 4);
    CHECK(one.loss.mean == four.loss.mean);
    CHECK(one.grad_phi == four.grad_phi);
    CHECK(one.grad_theta == four.grad_theta);
}

TEST_CASE("Gibbs bound holds for arbitrary variational states", "[trainer][property]") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Problem p = random_problem(2, 2, 0.5 + 0.5 * static_cast<double>(seed), seed);
        for (double beta : {0.1, 1.0, 3.0}) {
            const double bound = solve(p.h, beta).free_energy;
            const double loss = exact_loss(p.model, p.circuit, p.theta, p.h, beta);
            CHECK(loss >= bound - 1e-9);
        }
    }
}

TEST_CASE("sampled loss is an unbiased estimate", "[trainer][sampling]") {
    const Problem p = random_problem(1, 3, 1.0, 77);
    const double exact = exact_loss(p.model, p.circuit, p.theta, p.h, 1.0);
    Rng rng(3);
    const LossEstimate est = estimate_loss(p.model, p.circuit, p.theta, p.h, 1.0, 20000, rng);
    CHECK(est.std_error > 0.0);
    CHECK(std::abs(est.mean - exact) < 5.0 * est.std_error);
    const LossEstimate e = estimate_loss(p.model, p.circuit, p.theta, p.h, 1.0, 1, rng, true);
    CHECK(e.mean == Approx(exact).margin(1e-12));
}

TEST_CASE("small enumerated training approaches -ln Z and respects the bound",
          "[trainer][integration]") {
    TrainConfig config;
    config.beta = 1.0;
    config.epochs = 300;
    config.hidden = 16;
    config.lr_phi = 0.05;
    config.lr_theta = 0.05;
    config.seed = 3;
    const LatticeSpec lattice{1, 2, 1.0};
    const double bound = solve(build_tfim(lattice), 1.0).free_energy;
    int epochs_seen = 0;
    const RunRecord run = train(config, lattice, 1, [&](const EpochRecord &) { ++epochs_seen; });
    CHECK(run.enumeration);
    CHECK(epochs_seen == 301);
    REQUIRE(run.epochs.size() == 301);
    for (const auto &e : run.epochs) {
        CHECK(e.loss >= bound - 1e-9);
    }
    CHECK(std::abs(run.epochs.back().loss - bound) < 0.01 * std::abs(bound));
}

TEST_CASE("training is reproducible for a fixed seed", "[trainer][determinism]") {
    TrainConfig config;
    config.beta = 0.5;
    config.epochs = 5;
    config.hidden = 8;
    config.batch_size = 64;
    config.deterministic_smalln = false;
    config.seed = 1234;
    const LatticeSpec lattice{1, 3, 2.0};
    const RunRecord a = train(config, lattice, 1);
    const RunRecord b = train(config, lattice, 1);
    CHECK_FALSE(a.enumeration);
    for (std::size_t i = 0; i < a.epochs.size(); ++i) {
        CHECK(a.epochs[i].loss == b.epochs[i].loss);
        CHECK(a.epochs[i].loss_stderr == b.epochs[i].loss_stderr);
    }
    CHECK(a.final_state.theta == b.final_state.theta);
}

TEST_CASE("observables under an identity circuit reduce to classical sums",
          "[trainer]") {
    // With zero angles and no field, the circuit permutes basis states and
    // the variance of H is the classical variance of energies under p.
    const LatticeSpec lattice{2, 2, 0.0};
    const PauliSum h = build_tfim(lattice);
    AnsatzCircuit circuit = build_ansatz(lattice, 1);
    std::vector<double> theta(circuit.n_params(), 0.0);
    Rng rng(2);
    const MadeModel model = test::random_made(4, 5, rng);
    const VariationalState state{model, circuit, theta};
    const WeightedInputs inputs = enumerate_inputs(model);
    const Observables obs = measure_observables(state, h, 2.0, inputs);
    double e = 0.0;
    double e2 = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const double ex = circuit_energy(inputs.bits[i], circuit, theta, h);
        e += inputs.weights[i] * ex;
        e2 += inputs.weights[i] * ex * ex;
    }
    CHECK(obs.energy == Approx(e).margin(1e-12));
    CHECK(obs.specific_heat == Approx(4.0 * (e2 - e * e)).margin(1e-10));
    CHECK(obs.purity > 1.0 / 16.0 - 1e-12);
}

TEST_CASE("excitation spectrum is sorted and distinct", "[trainer]") {
    const Problem p = random_problem(2, 2, 1.0, 21);
    Rng rng(4);
    const auto spectrum = excitation_spectrum(p.model, p.circuit, p.theta, p.h, 500, rng);
    REQUIRE_FALSE(spectrum.empty());
    for (std::size_t i = 1; i < spectrum.size(); ++i) {
        CHECK(spectrum[i - 1].energy <= spectrum[i].energy);
        CHECK_FALSE(spectrum[i - 1].bits == spectrum[i].bits);
    }
}

TEST_CASE("theta checkpoint round trip", "[trainer][io]") {
    const Problem p = random_problem(1, 2, 1.0, 8);
    const auto path = std::filesystem::temp_directory_path() / "betavqe_test_theta.json";
    save_theta_checkpoint(p.circuit, p.theta, path.string());
    CHECK(load_theta_checkpoint(p.circuit, path.string()) == p.theta);
    const AnsatzCircuit other = build_ansatz({1, 3, 1.0}, 1);
    CHECK_THROWS_AS(load_theta_checkpoint(other, path.string()), Error);
    std::filesystem::remove(path);
}

TEST_CASE("train config validation", "[trainer]") {
    TrainConfig config;
    CHECK_NOTHROW(config.validate());
    config.beta = -1.0;
    CHECK_THROWS_AS(config.validate(), Error);
    config.beta = 1.0;
    config.batch_size = 1;
    CHECK_THROWS_AS(config.validate(), Error);
    config.batch_size = 10;
    config.lr_phi = 0.0;
    CHECK_THROWS_AS(config.validate(), Error);
}

TEST_CASE("zero variance at the exact single-qubit solution", "[trainer][property]") {
    // H = -X, RY(pi/2)|x> are the eigenstates -/+ 1; with p(1)/p(0) = e^{-2 beta}
    // every per-sample reward equals -ln Z.
    const double beta = 2.0;
    const PauliSum h = build_tfim({1, 1, 1.0});
    const AnsatzCircuit circuit =
        AnsatzCircuit::from_gates(1, {GateOp::rotation(GateKind::RY, 0, 0)}, 1);
    MadeModel model(1, 3);
    model.set_output_bias(std::vector<double>{-2.0 * beta});
    const VariationalState state{model, circuit, {std::numbers::pi / 2.0}};
    const BatchEvaluation eval = evaluate_batch(state, h, beta, enumerate_inputs(model), true);
    CHECK(eval.loss.std_error < 1e-6);
    CHECK(eval.loss.mean == Approx(-std::log(2.0 * std::cosh(beta))).margin(1e-12));
    for (double g : eval.grad_phi) {
        CHECK(std::abs(g) < 1e-10);
    }
    CHECK(std::abs(eval.grad_theta[0]) < 1e-10);
}

TEST_CASE("beta = 0 loss is minus the model entropy", "[trainer]") {
    const Problem p = random_problem(2, 2, 3.0, 12);
    const VariationalState state{p.model, p.circuit, p.theta};
    const WeightedInputs inputs = enumerate_inputs(p.model);
    const BatchEvaluation eval = evaluate_batch(state, p.h, 0.0, inputs, false);
    double entropy = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        entropy -= inputs.weights[i] * inputs.log_probs[i];
    }
    CHECK(eval.loss.mean == Approx(-entropy).margin(1e-12));
    const MadeModel uniform(4, 5);
    const VariationalState flat{uniform, p.circuit, p.theta};
    CHECK(evaluate_batch(flat, p.h, 0.0, enumerate_inputs(uniform), false).loss.mean ==
          Approx(-4.0 * std::log(2.0)).margin(1e-12));
}

TEST_CASE("adding a constant to every reward leaves the gradient unchanged",
          "[trainer][property]") {
    const Problem p = random_problem(1, 4, 1.0, 31);
    const WeightedInputs inputs = enumerate_inputs(p.model);
    std::vector<double> rewards(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        rewards[i] = per_sample_reward(inputs.bits[i], p.theta, p.circuit, p.h, 1.0, p.model);
    }
    std::vector<double> shifted = rewards;
    for (double &r : shifted) {
        r += 17.5;
    }
    CHECK(test::max_abs_diff(grad_phi(p.model, inputs, rewards),
                             grad_phi(p.model, inputs, shifted)) < 1e-10);
}

TEST_CASE("enumerated mean of the sampled estimators equals the exact gradient",
          "[trainer][property]") {
    // For a batch of two i.i.d. samples x, y the batch-mean-baseline
    // estimator is unbiased up to the O(1/B) self-term; without a baseline it
    // is exactly unbiased. Average the no-baseline estimator over all pairs.
    const Problem p = random_problem(1, 3, 0.8, 44);
    const double beta = 1.0;
    const WeightedInputs all = enumerate_inputs(p.model);
    const VariationalState state{p.model, p.circuit, p.theta};
    const BatchEvaluation exact = evaluate_batch(state, p.h, beta, all, true);
    std::vector<double> mean_phi(p.model.n_params(), 0.0);
    std::vector<double> mean_theta(p.circuit.n_params(), 0.0);
    for (std::size_t a = 0; a < all.size(); ++a) {
        for (std::size_t b = 0; b < all.size(); ++b) {
            const double w = all.weights[a] * all.weights[b];
            const std::vector<BitSample> batch{{all.bits[a], all.log_probs[a]},
                                               {all.bits[b], all.log_probs[b]}};
            const WeightedInputs g = group_samples(batch);
            std::vector<double> rewards(g.size());
            for (std::size_t i = 0; i < g.size(); ++i) {
                rewards[i] = per_sample_reward(g.bits[i], p.theta, p.circuit, p.h, beta, p.model);
            }
            const auto gp = grad_phi(p.model, g, rewards, Baseline::None);
            const auto gt = grad_theta(g, p.circuit, p.theta, p.h, beta);
            for (std::size_t k = 0; k < gp.size(); ++k) {
                mean_phi[k] += w * gp[k];
            }
            for (std::size_t k = 0; k < gt.size(); ++k) {
                mean_theta[k] += w * gt[k];
            }
        }
    }
    CHECK(test::max_abs_diff(mean_phi, exact.grad_phi) < 1e-8);
    CHECK(test::max_abs_diff(mean_theta, exact.grad_theta) < 1e-8);
}
