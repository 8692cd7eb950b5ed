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

#include "betavqe/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "betavqe/differentiation.hpp"
#include "betavqe/error.hpp"

namespace betavqe {

namespace {

// Inputs per work unit. Partial sums are formed per chunk and reduced in
// chunk order, so results do not depend on the thread count.
constexpr std::size_t inputs_per_chunk = 8;

template <typename Fn>
void for_each_chunk(std::size_t n_chunks, int threads, Fn &&fn) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            fn(c);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t c = next++; c < n_chunks; c = next++) {
            try {
                fn(c);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t spawn = std::min(workers, n_chunks);
    pool.reserve(spawn);
    for (std::size_t t = 0; t < spawn; ++t) {
        pool.emplace_back(worker);
    }
    for (auto &thread : pool) {
        thread.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::size_t chunk_count(std::size_t n) {
    return (n + inputs_per_chunk - 1) / inputs_per_chunk;
}

void check_finite(double value, const char *what, int epoch) {
    if (!std::isfinite(value)) {
        throw NumericalError(std::string("non-finite ") + what + " at epoch " +
                             std::to_string(epoch));
    }
}

constexpr int theta_checkpoint_version = 1;

} // namespace

void TrainConfig::validate() const {
    BETAVQE_ABORT_IF(!std::isfinite(beta) || beta < 0.0,
                     "beta must be finite and non-negative");
    BETAVQE_ABORT_IF(batch_size < 2, "batch_size must be at least 2");
    BETAVQE_ABORT_IF(epochs < 0, "epochs must be non-negative");
    BETAVQE_ABORT_IF(!(lr_phi > 0.0) || !(lr_theta > 0.0),
                     "learning rates must be positive");
    BETAVQE_ABORT_IF(!(adam.beta1 >= 0.0 && adam.beta1 < 1.0) ||
                         !(adam.beta2 >= 0.0 && adam.beta2 < 1.0) ||
                         !(adam.epsilon > 0.0),
                     "invalid Adam hyper-parameters");
    BETAVQE_ABORT_IF(enumeration_threshold < 0 || enumeration_threshold > 20,
                     "enumeration_threshold must be in [0, 20]");
    BETAVQE_ABORT_IF(hidden < 1, "hidden must be positive");
    BETAVQE_ABORT_IF(threads < 1, "threads must be positive");
}

void VariationalState::validate() const {
    BETAVQE_ABORT_IF(model.n_sites() != circuit.n_qubits(),
                     "model and circuit sizes differ");
    circuit.check_parameters(theta);
}

WeightedInputs group_samples(std::span<const BitSample> samples) {
    BETAVQE_ABORT_IF(samples.empty(), "sample batch is empty");
    std::map<Bitstring, std::pair<int, double>> counts;
    for (const auto &s : samples) {
        auto [it, inserted] = counts.try_emplace(s.bits, 0, s.log_prob);
        ++it->second.first;
    }
    WeightedInputs out;
    out.batch = static_cast<int>(samples.size());
    const double inv = 1.0 / static_cast<double>(samples.size());
    for (const auto &[bits, entry] : counts) {
        out.bits.push_back(bits);
        out.weights.push_back(entry.first * inv);
        out.log_probs.push_back(entry.second);
    }
    return out;
}

WeightedInputs enumerate_inputs(const MadeModel &model) {
    BETAVQE_ABORT_IF(model.n_sites() > 20, "enumeration limited to 20 sites");
    const std::uint64_t dim = std::uint64_t{1} << model.n_sites();
    WeightedInputs out;
    out.exact = true;
    out.batch = static_cast<int>(dim);
    out.bits.reserve(dim);
    out.weights.reserve(dim);
    out.log_probs.reserve(dim);
    for (std::uint64_t k = 0; k < dim; ++k) {
        const Bitstring x(model.n_sites(), k);
        const double lp = model.log_prob(x);
        out.bits.push_back(x);
        out.log_probs.push_back(lp);
        out.weights.push_back(std::exp(lp));
    }
    return out;
}

double per_sample_reward(const Bitstring &x, std::span<const double> theta,
                         const AnsatzCircuit &circuit, const PauliSum &h,
                         double beta, const MadeModel &model) {
    BETAVQE_ABORT_IF(model.n_sites() != circuit.n_qubits(),
                     "model and circuit sizes differ");
    return model.log_prob(x) + beta * circuit_energy(x, circuit, theta, h);
}

LossEstimate loss_statistics(const WeightedInputs &inputs,
                             std::span<const double> rewards) {
    BETAVQE_ABORT_IF(rewards.size() != inputs.size(),
                     "one reward per input is required");
    BETAVQE_ABORT_IF(inputs.size() == 0, "loss needs at least one input");
    double mean = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        mean += inputs.weights[i] * rewards[i];
    }
    double second = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const double d = rewards[i] - mean;
        second += inputs.weights[i] * d * d;
    }
    LossEstimate out;
    out.mean = mean;
    if (inputs.exact) {
        out.std_error = std::sqrt(second);
    } else if (inputs.batch > 1) {
        const double b = inputs.batch;
        const double variance = second * b / (b - 1.0);
        out.std_error = std::sqrt(variance / b);
    }
    return out;
}

BatchEvaluation evaluate_batch(const VariationalState &state, const PauliSum &h,
                               double beta, const WeightedInputs &inputs,
                               bool with_gradients, int threads) {
    state.validate();
    BETAVQE_ABORT_IF(h.n_qubits() != state.circuit.n_qubits(),
                     "Hamiltonian and circuit sizes differ");
    BETAVQE_ABORT_IF(inputs.size() == 0, "no inputs to evaluate");
    const std::size_t n = inputs.size();
    const std::size_t n_theta = state.circuit.n_params();

    BatchEvaluation out;
    out.energies.assign(n, 0.0);
    out.rewards.assign(n, 0.0);

    const std::size_t n_chunks = chunk_count(n);
    std::vector<std::vector<double>> partial_theta(
        with_gradients ? n_chunks : 0, std::vector<double>(n_theta, 0.0));
    for_each_chunk(n_chunks, threads, [&](std::size_t c) {
        AdjointWorkspace work(state.circuit.n_qubits());
        std::vector<double> gradient(n_theta, 0.0);
        const std::size_t end = std::min(n, (c + 1) * inputs_per_chunk);
        for (std::size_t i = c * inputs_per_chunk; i < end; ++i) {
            double energy = 0.0;
            if (with_gradients) {
                adjoint_energy_gradient_into(inputs.bits[i], state.circuit,
                                             state.theta, h, work, energy,
                                             gradient);
                auto &acc = partial_theta[c];
                const double w = inputs.weights[i];
                for (std::size_t k = 0; k < n_theta; ++k) {
                    acc[k] += w * gradient[k];
                }
            } else {
                energy = circuit_energy_moments(inputs.bits[i], state.circuit,
                                                state.theta, h, work)
                             .energy;
            }
            out.energies[i] = energy;
            out.rewards[i] = inputs.log_probs[i] + beta * energy;
        }
    });

    out.loss = loss_statistics(inputs, out.rewards);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = inputs.weights[i];
        out.energy += w * out.energies[i];
        out.entropy -= w * inputs.log_probs[i];
        out.purity += w * std::exp(inputs.log_probs[i]);
    }

    if (with_gradients) {
        out.grad_theta.assign(n_theta, 0.0);
        for (const auto &acc : partial_theta) {
            for (std::size_t k = 0; k < n_theta; ++k) {
                out.grad_theta[k] += acc[k];
            }
        }
        for (auto &g : out.grad_theta) {
            g *= beta;
        }
        out.grad_phi = grad_phi(state.model, inputs, out.rewards);
    }
    return out;
}

LossEstimate estimate_loss(const MadeModel &model, const AnsatzCircuit &circuit,
                           std::span<const double> theta, const PauliSum &h,
                           double beta, int batch, Rng &rng, bool exact,
                           int threads) {
    WeightedInputs inputs;
    if (exact) {
        inputs = enumerate_inputs(model);
    } else {
        BETAVQE_ABORT_IF(batch < 2, "loss estimate needs a batch of at least 2");
        inputs = group_samples(sample(model, batch, rng));
    }
    const VariationalState state{model, circuit,
                                 std::vector<double>(theta.begin(), theta.end())};
    return evaluate_batch(state, h, beta, inputs, false, threads).loss;
}

std::vector<double> grad_theta(const WeightedInputs &inputs,
                               const AnsatzCircuit &circuit,
                               std::span<const double> theta, const PauliSum &h,
                               double beta, int threads) {
    BETAVQE_ABORT_IF(inputs.size() == 0, "gradient needs at least one input");
    circuit.check_parameters(theta);
    const std::size_t n_theta = circuit.n_params();
    const std::size_t n_chunks = chunk_count(inputs.size());
    std::vector<std::vector<double>> partial(n_chunks,
                                             std::vector<double>(n_theta, 0.0));
    for_each_chunk(n_chunks, threads, [&](std::size_t c) {
        AdjointWorkspace work(circuit.n_qubits());
        std::vector<double> gradient(n_theta, 0.0);
        const std::size_t end = std::min(inputs.size(), (c + 1) * inputs_per_chunk);
        for (std::size_t i = c * inputs_per_chunk; i < end; ++i) {
            double energy = 0.0;
            adjoint_energy_gradient_into(inputs.bits[i], circuit, theta, h, work,
                                         energy, gradient);
            for (std::size_t k = 0; k < n_theta; ++k) {
                partial[c][k] += inputs.weights[i] * gradient[k];
            }
        }
    });
    std::vector<double> out(n_theta, 0.0);
    for (const auto &acc : partial) {
        for (std::size_t k = 0; k < n_theta; ++k) {
            out[k] += acc[k];
        }
    }
    for (auto &g : out) {
        g *= beta;
    }
    return out;
}

std::vector<double> grad_theta(std::span<const BitSample> samples,
                               const AnsatzCircuit &circuit,
                               std::span<const double> theta, const PauliSum &h,
                               double beta) {
    return grad_theta(group_samples(samples), circuit, theta, h, beta);
}

std::vector<double> grad_phi(const MadeModel &model, const WeightedInputs &inputs,
                             std::span<const double> rewards, Baseline baseline) {
    BETAVQE_ABORT_IF(rewards.size() != inputs.size(),
                     "one reward per input is required");
    BETAVQE_ABORT_IF(!inputs.exact && inputs.batch < 2,
                     "score-function gradient needs a batch of at least 2");
    double b = 0.0;
    if (baseline == Baseline::BatchMean) {
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            b += inputs.weights[i] * rewards[i];
        }
    }
    std::vector<double> out(model.n_params(), 0.0);
    std::vector<double> score(model.n_params(), 0.0);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const double scale = inputs.weights[i] * (rewards[i] - b);
        if (scale == 0.0) {
            continue;
        }
        model.grad_log_prob_into(inputs.bits[i], score);
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] += scale * score[k];
        }
    }
    return out;
}

VariationalState initial_state(const TrainConfig &config, AnsatzCircuit circuit,
                               Rng &rng) {
    MadeModel model(circuit.n_qubits(), config.hidden, config.init, rng);
    std::vector<double> theta(circuit.n_params(), 0.0);
    return {std::move(model), std::move(circuit), std::move(theta)};
}

RunRecord train(const TrainConfig &config, const PauliSum &h,
                VariationalState initial, const EpochCallback &on_epoch) {
    config.validate();
    initial.validate();
    BETAVQE_ABORT_IF(h.n_qubits() != initial.circuit.n_qubits(),
                     "Hamiltonian and circuit sizes differ");

    RunRecord record;
    record.config = config;
    record.enumeration = config.uses_enumeration(h.n_qubits());
    record.final_state = std::move(initial);
    auto &state = record.final_state;

    // Seeded separately from model initialisation so that warm starts and
    // fresh starts draw the same sample stream.
    Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    AdamState adam_phi(state.model.n_params());
    AdamState adam_theta(state.circuit.n_params());
    std::vector<double> phi(state.model.parameters().begin(),
                            state.model.parameters().end());

    record.epochs.reserve(static_cast<std::size_t>(config.epochs) + 1);
    for (int epoch = 0; epoch <= config.epochs; ++epoch) {
        const WeightedInputs inputs =
            record.enumeration
                ? enumerate_inputs(state.model)
                : group_samples(sample(state.model, config.batch_size, rng));
        const bool update = epoch < config.epochs;
        const BatchEvaluation eval =
            evaluate_batch(state, h, config.beta, inputs, update, config.threads);
        check_finite(eval.loss.mean, "loss", epoch);

        EpochRecord row;
        row.epoch = epoch;
        row.loss = eval.loss.mean;
        row.loss_stderr = eval.loss.std_error;
        row.energy = eval.energy;
        row.entropy = eval.entropy;
        row.purity = eval.purity;
        record.epochs.push_back(row);
        if (on_epoch) {
            on_epoch(row);
        }
        if (!update) {
            break;
        }
        adam_step(phi, eval.grad_phi, adam_phi, config.lr_phi, config.adam);
        state.model.set_parameters(phi);
        adam_step(state.theta, eval.grad_theta, adam_theta, config.lr_theta,
                  config.adam);
    }
    return record;
}

RunRecord train(const TrainConfig &config, const LatticeSpec &lattice, int depth,
                const EpochCallback &on_epoch) {
    config.validate();
    const PauliSum h = build_tfim(lattice);
    Rng init_rng(config.seed);
    VariationalState state = initial_state(config, build_ansatz(lattice, depth), init_rng);
    return train(config, h, std::move(state), on_epoch);
}

Observables measure_observables(const VariationalState &state, const PauliSum &h,
                                double beta, const WeightedInputs &inputs,
                                int threads) {
    state.validate();
    BETAVQE_ABORT_IF(inputs.size() == 0, "no inputs to evaluate");
    const std::size_t n = inputs.size();
    std::vector<EnergyMoments> moments(n);
    for_each_chunk(chunk_count(n), threads, [&](std::size_t c) {
        AdjointWorkspace work(state.circuit.n_qubits());
        const std::size_t end = std::min(n, (c + 1) * inputs_per_chunk);
        for (std::size_t i = c * inputs_per_chunk; i < end; ++i) {
            moments[i] = circuit_energy_moments(inputs.bits[i], state.circuit,
                                                state.theta, h, work);
        }
    });
    std::vector<double> rewards(n);
    Observables out;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = inputs.weights[i];
        rewards[i] = inputs.log_probs[i] + beta * moments[i].energy;
        out.energy += w * moments[i].energy;
        out.energy_sq += w * moments[i].energy_sq;
        out.entropy -= w * inputs.log_probs[i];
        out.purity += w * std::exp(inputs.log_probs[i]);
    }
    const LossEstimate loss = loss_statistics(inputs, rewards);
    out.loss = loss.mean;
    out.loss_stderr = loss.std_error;
    out.specific_heat = beta * beta * (out.energy_sq - out.energy * out.energy);
    return out;
}

std::vector<SpectrumEntry> excitation_spectrum(const MadeModel &model,
                                               const AnsatzCircuit &circuit,
                                               std::span<const double> theta,
                                               const PauliSum &h, int n_samples,
                                               Rng &rng) {
    BETAVQE_ABORT_IF(n_samples < 1, "spectrum needs at least one sample");
    const WeightedInputs inputs = group_samples(sample(model, n_samples, rng));
    std::vector<SpectrumEntry> out;
    out.reserve(inputs.size());
    AdjointWorkspace work(circuit.n_qubits());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const double energy =
            circuit_energy_moments(inputs.bits[i], circuit, theta, h, work).energy;
        out.push_back({inputs.bits[i], energy, inputs.log_probs[i]});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const SpectrumEntry &a, const SpectrumEntry &b) {
                         return a.energy < b.energy;
                     });
    return out;
}

void save_theta_checkpoint(const AnsatzCircuit &circuit,
                           std::span<const double> theta, const std::string &path) {
    circuit.check_parameters(theta);
    nlohmann::json doc;
    doc["format"] = "betavqe-theta";
    doc["version"] = theta_checkpoint_version;
    doc["n_qubits"] = circuit.n_qubits();
    doc["n_params"] = circuit.n_params();
    doc["depth"] = circuit.depth();
    doc["theta"] = std::vector<double>(theta.begin(), theta.end());
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write checkpoint " + path);
    }
    out << doc.dump(1) << '\n';
}

std::vector<double> load_theta_checkpoint(const AnsatzCircuit &circuit,
                                          const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot read checkpoint " + path);
    }
    try {
        const auto doc = nlohmann::json::parse(in);
        BETAVQE_ABORT_IF(doc.at("format").get<std::string>() != "betavqe-theta",
                         "not a circuit-angle checkpoint");
        BETAVQE_ABORT_IF(doc.at("version").get<int>() != theta_checkpoint_version,
                         "unsupported circuit-angle checkpoint version");
        BETAVQE_ABORT_IF(doc.at("n_qubits").get<int>() != circuit.n_qubits() ||
                             doc.at("n_params").get<std::size_t>() != circuit.n_params(),
                         "checkpoint does not match the circuit");
        auto theta = doc.at("theta").get<std::vector<double>>();
        circuit.check_parameters(theta);
        return theta;
    } catch (const nlohmann::json::exception &e) {
        throw Error(std::string("malformed circuit-angle checkpoint: ") + e.what());
    }
}

} // namespace betavqe
