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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "betavqe/config.hpp"
#include "betavqe/error.hpp"
#include "betavqe/runner.hpp"

namespace {

int threads_from_env() {
    const char *value = std::getenv("BETAVQE_THREADS");
    if (value == nullptr || *value == '\0') {
        return 1;
    }
    try {
        const int n = std::stoi(value);
        return n > 0 ? n : 1;
    } catch (const std::exception &) {
        std::cerr << "betavqe: ignoring invalid BETAVQE_THREADS='" << value << "'\n";
        return 1;
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Thermal states of quantum lattice models with an autoregressive "
                 "network feeding a variational circuit"};
    app.set_version_flag("--version", betavqe::version_string());
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    bool deterministic = false;
    std::optional<std::string> out_dir;
    std::optional<std::string> checkpoint;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--config", config_path, "Run configuration file")->required();
        cmd->add_option("--seed", seed, "Override train.seed");
        cmd->add_flag("--deterministic", deterministic,
                      "Exact enumeration for small systems; fixed reduction order");
        cmd->add_option("--out", out_dir, "Override output.directory");
    };
    auto *train = app.add_subcommand("train", "Train at one beta, write the loss trajectory");
    auto *sweep = app.add_subcommand("sweep", "Train over train.beta_list, write observables");
    auto *spectrum = app.add_subcommand("spectrum", "Sampled low-energy spectrum");
    auto *oracle = app.add_subcommand("oracle", "Exact-diagonalisation reference tables");
    for (auto *cmd : {train, sweep, spectrum, oracle}) {
        add_common(cmd);
    }
    spectrum->add_option("--checkpoint", checkpoint,
                         "Directory with model.json/theta.json from a previous train run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : betavqe::exit_config_error;
    }

    betavqe::RunConfig config;
    try {
        if (!std::filesystem::exists(config_path)) {
            std::cerr << "betavqe: config file not found: " << config_path << '\n';
            return betavqe::exit_config_error;
        }
        config = betavqe::load_run_config(config_path);
        if (seed) {
            config.seed = *seed;
        }
        if (deterministic) {
            config.deterministic_smalln = true;
        }
        if (out_dir) {
            config.output_directory = *out_dir;
        }
        if (checkpoint) {
            config.spectrum_checkpoint = *checkpoint;
        }
        config.threads = threads_from_env();
        config.validate();
    } catch (const betavqe::Error &e) {
        std::cerr << "betavqe: invalid config '" << config_path << "': " << e.what() << '\n';
        return betavqe::exit_config_error;
    }

    try {
        if (train->parsed()) {
            betavqe::cmd_train(config, std::cerr);
        } else if (sweep->parsed()) {
            betavqe::cmd_sweep(config, std::cerr);
        } else if (spectrum->parsed()) {
            betavqe::cmd_spectrum(config, std::cerr);
        } else {
            betavqe::cmd_oracle(config, std::cerr);
        }
    } catch (const betavqe::NumericalError &e) {
        std::cerr << "betavqe: numerical failure: " << e.what() << '\n';
        return betavqe::exit_numerical_error;
    } catch (const std::exception &e) {
        std::cerr << "betavqe: " << e.what() << '\n';
        return betavqe::exit_failure;
    }
    return betavqe::exit_ok;
}
