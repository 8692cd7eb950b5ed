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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "betavqe/ansatz.hpp"
#include "betavqe/differentiation.hpp"
#include "betavqe/made.hpp"
#include "betavqe/pauli.hpp"
#include "betavqe/statevector.hpp"
#include "betavqe/trainer.hpp"

namespace {

using namespace betavqe;

std::vector<double> random_theta(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    std::vector<double> out(n);
    for (auto &v : out) {
        v = dist(rng);
    }
    return out;
}

void BM_RotationGate(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    Statevector psi(n);
    int q = 0;
    for (auto _ : state) {
        psi.apply_rotation(GateKind::RY, q, 0.3);
        q = (q + 1) % n;
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_RotationGate)->Arg(9)->Arg(16)->Arg(20);

void BM_CnotGate(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    Statevector psi(n);
    int q = 0;
    for (auto _ : state) {
        psi.apply_cnot(q, (q + 1) % n);
        q = (q + 1) % n;
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_CnotGate)->Arg(9)->Arg(16)->Arg(20);

void BM_TfimExpectation(benchmark::State &state) {
    const int side = static_cast<int>(state.range(0));
    const LatticeSpec lattice{side, side, 3.0};
    const PauliSum h = build_tfim(lattice);
    const AnsatzCircuit circuit = build_ansatz(lattice, 1);
    const auto theta = random_theta(circuit.n_params(), 1);
    const Statevector psi = circuit.prepare(Bitstring(lattice.n_sites(), 0), theta);
    for (auto _ : state) {
        benchmark::DoNotOptimize(expectation(psi, h));
    }
}
BENCHMARK(BM_TfimExpectation)->Arg(3)->Arg(4);

void BM_AdjointGradient3x3(benchmark::State &state) {
    const LatticeSpec lattice{3, 3, 3.0};
    const PauliSum h = build_tfim(lattice);
    const AnsatzCircuit circuit = build_ansatz(lattice, static_cast<int>(state.range(0)));
    const auto theta = random_theta(circuit.n_params(), 2);
    AdjointWorkspace work(9);
    std::vector<double> grad(circuit.n_params());
    double energy = 0.0;
    std::uint64_t x = 0;
    for (auto _ : state) {
        adjoint_energy_gradient_into(Bitstring(9, x), circuit, theta, h, work, energy, grad);
        x = (x + 37) % 512;
        benchmark::DoNotOptimize(energy);
    }
}
BENCHMARK(BM_AdjointGradient3x3)->Arg(1)->Arg(5);

void BM_ParameterShift3x3Depth1(benchmark::State &state) {
    const LatticeSpec lattice{3, 3, 3.0};
    const PauliSum h = build_tfim(lattice);
    const AnsatzCircuit circuit = build_ansatz(lattice, 1);
    const auto theta = random_theta(circuit.n_params(), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(grad_expectation_shift(Bitstring(9, 5), circuit, theta, h));
    }
}
BENCHMARK(BM_ParameterShift3x3Depth1)->Unit(benchmark::kMillisecond);

void BM_MadeSample(benchmark::State &state) {
    Rng rng(4);
    const MadeModel model(9, static_cast<int>(state.range(0)), MadeInit::Uniform, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.sample_one(rng));
    }
}
BENCHMARK(BM_MadeSample)->Arg(64)->Arg(500);

void BM_MadeGradLogProb(benchmark::State &state) {
    Rng rng(5);
    const MadeModel model(9, static_cast<int>(state.range(0)), MadeInit::Uniform, rng);
    std::vector<double> grad(model.n_params());
    std::uint64_t x = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.grad_log_prob_into(Bitstring(9, x), grad));
        x = (x + 11) % 512;
    }
}
BENCHMARK(BM_MadeGradLogProb)->Arg(64)->Arg(500);

void BM_TrainingEpoch3x3(benchmark::State &state) {
    const LatticeSpec lattice{3, 3, 3.0};
    const PauliSum h = build_tfim(lattice);
    TrainConfig config;
    config.batch_size = static_cast<int>(state.range(0));
    config.deterministic_smalln = false;
    Rng rng(6);
    VariationalState vs = initial_state(config, build_ansatz(lattice, 5), rng);
    vs.theta = random_theta(vs.theta.size(), 7);
    for (auto _ : state) {
        const WeightedInputs inputs = group_samples(sample(vs.model, config.batch_size, rng));
        benchmark::DoNotOptimize(evaluate_batch(vs, h, 1.0, inputs, true));
    }
}
BENCHMARK(BM_TrainingEpoch3x3)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
