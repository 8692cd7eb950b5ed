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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "betavqe/pauli.hpp"
#include "betavqe/trainer.hpp"

namespace betavqe {

/**
 * @brief Resolved contents of a run configuration file.
 *
 * The file is INI-style: `[section]` headers followed by `key = value`
 * lines, `;` or `#` comments. Lists are comma separated. Recognised keys:
 *
 *     [lattice]  rows, cols, gamma (number or list)
 *     [circuit]  depth
 *     [model]    hidden, init (cold | uniform | zero)
 *     [train]    beta | beta_list, batch_size, epochs, lr_phi, lr_theta,
 *                adam_beta1, adam_beta2, adam_epsilon, seed,
 *                deterministic_smalln, enumeration_threshold, warm_start,
 *                log_every
 *     [output]   directory, formats (list of csv, checkpoint)
 *     [spectrum] n_samples, checkpoint
 *
 * Unknown sections or keys are rejected.
 */
struct RunConfig {
    int rows = 1;
    int cols = 1;
    std::vector<double> gammas{1.0};
    int depth = 1;

    int hidden = 500;
    MadeInit init = MadeInit::Cold;

    std::vector<double> betas{1.0};
    bool beta_is_list = false;
    int batch_size = 1000;
    int epochs = 100;
    double lr_phi = 0.01;
    double lr_theta = 0.01;
    AdamHyper adam;
    std::uint64_t seed = 0;
    bool deterministic_smalln = true;
    int enumeration_threshold = 10;
    bool warm_start = false;
    int log_every = 0;

    std::string output_directory = "betavqe_out";
    bool write_csv = true;
    bool write_checkpoints = true;

    int spectrum_samples = 1000;
    std::string spectrum_checkpoint;

    int threads = 1;

    [[nodiscard]] LatticeSpec lattice(double gamma) const;
    [[nodiscard]] TrainConfig train_config(double beta) const;
    [[nodiscard]] int n_sites() const noexcept { return rows * cols; }

    /// Canonical text of every resolved field; what the hash is taken over.
    [[nodiscard]] std::string canonical_text() const;
    [[nodiscard]] std::string hash_hex() const;

    void validate() const;
};

/// Parse config text; throws Error with a message naming the bad key.
[[nodiscard]] RunConfig parse_run_config(std::string_view text);
/// Read and parse a file; throws Error naming the path if it cannot be read.
[[nodiscard]] RunConfig load_run_config(const std::string &path);

/// 64-bit FNV-1a, stable across platforms.
[[nodiscard]] std::uint64_t fnv1a64(std::string_view data) noexcept;

} // namespace betavqe
