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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "betavqe/adam.hpp"
#include "betavqe/ansatz.hpp"
#include "betavqe/made.hpp"
#include "betavqe/pauli.hpp"

namespace betavqe {

struct TrainConfig {
    double beta = 1.0;
    int batch_size = 1000;
    int epochs = 100;
    double lr_phi = 0.01;
    double lr_theta = 0.01;
    AdamHyper adam;
    std::uint64_t seed = 0;
    /// Replace sampling by exact enumeration over all 2^n inputs when
    /// n <= enumeration_threshold.
    bool deterministic_smalln = true;
    int enumeration_threshold = 10;
    int hidden = 500;
    MadeInit init = MadeInit::Cold;
    /// Worker threads for per-input circuit evaluations. Results do not
    /// depend on this value.
    int threads = 1;

    void validate() const;
    [[nodiscard]] bool uses_enumeration(int n_sites) const noexcept {
        return deterministic_smalln && n_sites <= enumeration_threshold;
    }
};

/// Autoregressive input distribution plus circuit and its angles.
struct VariationalState {
    MadeModel model;
    AnsatzCircuit circuit;
    std::vector<double> theta;

    void validate() const;
};

/**
 * @brief Distinct inputs with their weights in an expectation.
 *
 * From a sampled batch the weight of x is count(x) / batch; from enumeration
 * it is p(x) and `exact` is set.
 */
struct WeightedInputs {
    std::vector<Bitstring> bits;
    std::vector<double> weights;
    std::vector<double> log_probs;
    int batch = 0;
    bool exact = false;

    [[nodiscard]] std::size_t size() const noexcept { return bits.size(); }
};

[[nodiscard]] WeightedInputs group_samples(std::span<const BitSample> samples);
[[nodiscard]] WeightedInputs enumerate_inputs(const MadeModel &model);

/// f(x) = ln p(x) + beta <x|U^dag H U|x>
[[nodiscard]] double per_sample_reward(const Bitstring &x,
                                       std::span<const double> theta,
                                       const AnsatzCircuit &circuit,
                                       const PauliSum &h, double beta,
                                       const MadeModel &model);

struct LossEstimate {
    double mean = 0.0;
    /// Standard error of the batch mean; with exact enumeration, the standard
    /// deviation of f under p.
    double std_error = 0.0;
};

/// Mean and spread of f over `inputs`.
[[nodiscard]] LossEstimate loss_statistics(const WeightedInputs &inputs,
                                           std::span<const double> rewards);

/// Draws `batch` samples (or enumerates when `exact`) and returns the loss.
[[nodiscard]] LossEstimate estimate_loss(const MadeModel &model,
                                         const AnsatzCircuit &circuit,
                                         std::span<const double> theta,
                                         const PauliSum &h, double beta,
                                         int batch, Rng &rng, bool exact = false,
                                         int threads = 1);

/// beta * sum_x w(x) d<x|U^dag H U|x>/d theta
[[nodiscard]] std::vector<double> grad_theta(const WeightedInputs &inputs,
                                             const AnsatzCircuit &circuit,
                                             std::span<const double> theta,
                                             const PauliSum &h, double beta,
                                             int threads = 1);
[[nodiscard]] std::vector<double> grad_theta(std::span<const BitSample> samples,
                                             const AnsatzCircuit &circuit,
                                             std::span<const double> theta,
                                             const PauliSum &h, double beta);

enum class Baseline { BatchMean, None };

/// sum_x w(x) (f(x) - b) d ln p(x) / d phi
[[nodiscard]] std::vector<double> grad_phi(const MadeModel &model,
                                           const WeightedInputs &inputs,
                                           std::span<const double> rewards,
                                           Baseline baseline = Baseline::BatchMean);

/// Everything one epoch needs from a batch.
struct BatchEvaluation {
    std::vector<double> rewards;
    std::vector<double> energies;
    LossEstimate loss;
    double energy = 0.0;
    double entropy = 0.0;
    double purity = 0.0;
    std::vector<double> grad_phi;
    std::vector<double> grad_theta;
};

[[nodiscard]] BatchEvaluation evaluate_batch(const VariationalState &state,
                                             const PauliSum &h, double beta,
                                             const WeightedInputs &inputs,
                                             bool with_gradients, int threads = 1);

struct EpochRecord {
    int epoch = 0;
    double loss = 0.0;
    double loss_stderr = 0.0;
    double energy = 0.0;
    double entropy = 0.0;
    double purity = 0.0;
};

/// Row e holds the evaluation after e parameter updates; row 0 is the start.
struct RunRecord {
    TrainConfig config;
    bool enumeration = false;
    std::vector<EpochRecord> epochs;
    VariationalState final_state;
};

using EpochCallback = std::function<void(const EpochRecord &)>;

/// Fresh model (per config.init) and all-zero circuit angles.
[[nodiscard]] VariationalState initial_state(const TrainConfig &config,
                                             AnsatzCircuit circuit, Rng &rng);

/**
 * @brief Joint Adam optimisation of the model and circuit parameters.
 *
 * Each epoch draws a batch (or enumerates), evaluates rewards, forms the
 * baselined score-function gradient for the model and the adjoint gradient
 * for the circuit, and takes one Adam step on each group. A non-finite loss
 * aborts with NumericalError.
 */
[[nodiscard]] RunRecord train(const TrainConfig &config, const PauliSum &h,
                              VariationalState initial,
                              const EpochCallback &on_epoch = {});

/// TFIM on `lattice` with the brickwork ansatz of the given depth.
[[nodiscard]] RunRecord train(const TrainConfig &config, const LatticeSpec &lattice,
                              int depth, const EpochCallback &on_epoch = {});

struct Observables {
    double loss = 0.0;
    double loss_stderr = 0.0;
    double energy = 0.0;
    double energy_sq = 0.0;
    double specific_heat = 0.0;
    double entropy = 0.0;
    double purity = 0.0;
};

/// Thermal observables of the mixture, using <H^2> = sum_x w ||H U|x>||^2.
[[nodiscard]] Observables measure_observables(const VariationalState &state,
                                              const PauliSum &h, double beta,
                                              const WeightedInputs &inputs,
                                              int threads = 1);

struct SpectrumEntry {
    Bitstring bits;
    double energy = 0.0;
    double log_prob = 0.0;
};

/// Distinct sampled inputs with their circuit energies, ascending in energy.
[[nodiscard]] std::vector<SpectrumEntry>
excitation_spectrum(const MadeModel &model, const AnsatzCircuit &circuit,
                    std::span<const double> theta, const PauliSum &h,
                    int n_samples, Rng &rng);

/// Versioned JSON container for circuit angles.
void save_theta_checkpoint(const AnsatzCircuit &circuit,
                           std::span<const double> theta, const std::string &path);
[[nodiscard]] std::vector<double> load_theta_checkpoint(const AnsatzCircuit &circuit,
                                                        const std::string &path);

} // namespace betavqe
