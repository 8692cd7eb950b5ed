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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "betavqe/config.hpp"

namespace betavqe {

/// Exit codes shared by the command-line front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_config_error = 2,
    exit_numerical_error = 3,
};

[[nodiscard]] const char *version_string() noexcept;

/// Run directory for one transverse field: the output directory itself when
/// the config names a single field, otherwise a `gamma_<value>` subdirectory.
[[nodiscard]] std::filesystem::path gamma_directory(const RunConfig &config,
                                                    double gamma);

/**
 * Subcommands. Each writes its artifacts under config.output_directory,
 * logs progress to `log`, and throws on failure (Error for bad input,
 * NumericalError for a diverged run).
 *
 * train    loss_trajectory.csv (epoch, loss, stderr, exact_free_energy),
 *          telemetry.csv, model.json, theta.json, run_manifest.json
 * sweep    observables.csv, one training run per beta
 * spectrum spectrum.csv (gamma, bitstring, sampled_energy, log_prob,
 *          nearest_exact_eigenvalue, abs_error)
 * oracle   oracle.csv and eigenvalues.csv from exact diagonalisation
 */
void cmd_train(const RunConfig &config, std::ostream &log);
void cmd_sweep(const RunConfig &config, std::ostream &log);
void cmd_spectrum(const RunConfig &config, std::ostream &log);
void cmd_oracle(const RunConfig &config, std::ostream &log);

} // namespace betavqe
