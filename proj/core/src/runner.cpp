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

#include "betavqe/runner.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "betavqe/csv.hpp"
#include "betavqe/error.hpp"
#include "betavqe/exact.hpp"
#include "betavqe/trainer.hpp"

#ifndef BETAVQE_VERSION_STRING
#define BETAVQE_VERSION_STRING "0.0.0"
#endif

namespace betavqe {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t eval_stream = 0x5bd1e995a1b2c3d4ULL;
constexpr std::uint64_t spectrum_stream = 0x2545f4914f6cdd1dULL;

std::string number_tag(double value) { return csv_number(value); }

std::string manifest_line(const RunConfig &config) {
    return "# manifest=run_manifest.json config_hash=" + config.hash_hex() +
           " seed=" + std::to_string(config.seed) +
           " version=" + version_string() + "\n";
}

std::ofstream open_output(const fs::path &path) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    return out;
}

void write_manifest(const fs::path &dir, const RunConfig &config,
                    const std::string &command, double gamma,
                    const std::vector<std::string> &files, bool enumeration) {
    nlohmann::json doc;
    doc["format"] = "betavqe-run-manifest";
    doc["version"] = 1;
    doc["code_version"] = version_string();
    doc["command"] = command;
    doc["config_hash"] = config.hash_hex();
    doc["seed"] = config.seed;
    doc["gamma"] = gamma;
    doc["rows"] = config.rows;
    doc["cols"] = config.cols;
    doc["enumeration"] = enumeration;
    doc["files"] = files;
    doc["resolved_config"] = config.canonical_text();
    auto out = open_output(dir / "run_manifest.json");
    out << doc.dump(1) << '\n';
}

bool has_oracle(const RunConfig &config) {
    return config.n_sites() <= max_exact_qubits;
}

std::string optional_number(const std::optional<double> &value) {
    return value ? csv_number(*value) : std::string{};
}

EpochCallback progress_logger(const RunConfig &config, std::ostream &log,
                              const std::string &prefix) {
    if (config.log_every <= 0) {
        return {};
    }
    return [&log, prefix, every = config.log_every](const EpochRecord &row) {
        if (row.epoch % every == 0) {
            log << prefix << " epoch " << row.epoch << " loss " << row.loss
                << " +- " << row.loss_stderr << " energy " << row.energy
                << " entropy " << row.entropy << '\n';
        }
    };
}

// Writes the per-run training files and returns their names.
std::vector<std::string> write_training_artifacts(const fs::path &dir,
                                                  const RunConfig &config,
                                                  const RunRecord &record,
                                                  std::optional<double> exact_bound) {
    std::vector<std::string> files;
    if (config.write_csv) {
        auto trajectory = open_output(dir / "loss_trajectory.csv");
        trajectory << manifest_line(config);
        trajectory << "epoch,loss,stderr,exact_free_energy\n";
        for (const auto &row : record.epochs) {
            trajectory << row.epoch << ',' << csv_number(row.loss) << ','
                       << csv_number(row.loss_stderr) << ','
                       << optional_number(exact_bound) << '\n';
        }
        auto telemetry = open_output(dir / "telemetry.csv");
        telemetry << manifest_line(config);
        telemetry << "epoch,loss,stderr,energy,entropy,purity\n";
        for (const auto &row : record.epochs) {
            telemetry << row.epoch << ',' << csv_number(row.loss) << ','
                      << csv_number(row.loss_stderr) << ','
                      << csv_number(row.energy) << ',' << csv_number(row.entropy)
                      << ',' << csv_number(row.purity) << '\n';
        }
        files.emplace_back("loss_trajectory.csv");
        files.emplace_back("telemetry.csv");
    }
    if (config.write_checkpoints) {
        fs::create_directories(dir);
        save_made_checkpoint(record.final_state.model, (dir / "model.json").string());
        save_theta_checkpoint(record.final_state.circuit, record.final_state.theta,
                              (dir / "theta.json").string());
        auto circuit_text = open_output(dir / "circuit.txt");
        write_circuit_text(circuit_text, record.final_state.circuit);
        files.emplace_back("model.json");
        files.emplace_back("theta.json");
        files.emplace_back("circuit.txt");
    }
    return files;
}

double single_beta(const RunConfig &config, const char *command) {
    if (config.betas.size() != 1) {
        throw Error(std::string(command) +
                    " needs a single train.beta; use sweep for a beta_list");
    }
    return config.betas.front();
}

VariationalState fresh_state(const RunConfig &config, const TrainConfig &train_config) {
    Rng init_rng(config.seed);
    return initial_state(train_config,
                         build_ansatz(config.lattice(config.gammas.front()), config.depth),
                         init_rng);
}

} // namespace

const char *version_string() noexcept { return BETAVQE_VERSION_STRING; }

fs::path gamma_directory(const RunConfig &config, double gamma) {
    const fs::path root(config.output_directory);
    if (config.gammas.size() == 1) {
        return root;
    }
    return root / ("gamma_" + number_tag(gamma));
}

void cmd_train(const RunConfig &config, std::ostream &log) {
    config.validate();
    const double beta = single_beta(config, "train");
    for (const double gamma : config.gammas) {
        const LatticeSpec lattice = config.lattice(gamma);
        const PauliSum h = build_tfim(lattice);
        const TrainConfig train_config = config.train_config(beta);
        std::optional<double> bound;
        if (has_oracle(config)) {
            bound = solve(h, beta).free_energy;
        }
        log << "train: " << lattice.rows << "x" << lattice.cols << " gamma "
            << gamma << " beta " << beta << " depth " << config.depth << '\n';
        const RunRecord record =
            train(train_config, h, fresh_state(config, train_config),
                  progress_logger(config, log, "  "));
        const fs::path dir = gamma_directory(config, gamma);
        const auto files = write_training_artifacts(dir, config, record, bound);
        write_manifest(dir, config, "train", gamma, files, record.enumeration);
        log << "  final loss " << record.epochs.back().loss;
        if (bound) {
            log << " (exact -ln Z " << *bound << ")";
        }
        log << " -> " << dir.string() << '\n';
    }
}

void cmd_sweep(const RunConfig &config, std::ostream &log) {
    config.validate();
    for (const double gamma : config.gammas) {
        const LatticeSpec lattice = config.lattice(gamma);
        const PauliSum h = build_tfim(lattice);
        const fs::path dir = gamma_directory(config, gamma);
        std::vector<double> spectrum;
        if (has_oracle(config)) {
            spectrum = exact_spectrum(h);
        }

        std::ostringstream table;
        table << manifest_line(config);
        table << "beta,energy,specific_heat,entropy,entropy_per_site,purity,loss,"
                 "exact_energy,exact_specific_heat,exact_entropy\n";
        std::vector<std::string> files;
        std::optional<VariationalState> previous;
        bool enumeration = false;
        for (std::size_t b = 0; b < config.betas.size(); ++b) {
            const double beta = config.betas[b];
            const TrainConfig train_config = config.train_config(beta);
            VariationalState start = (config.warm_start && previous)
                                         ? *previous
                                         : fresh_state(config, train_config);
            log << "sweep: gamma " << gamma << " beta " << beta << '\n';
            const RunRecord record = train(train_config, h, std::move(start),
                                           progress_logger(config, log, "  "));
            enumeration = record.enumeration;

            std::optional<ExactSolution> exact;
            if (!spectrum.empty()) {
                exact = thermal_from_spectrum(spectrum, beta);
            }
            const fs::path run_dir = config.betas.size() == 1
                                         ? dir
                                         : dir / ("beta_" + number_tag(beta));
            const auto run_files = write_training_artifacts(
                run_dir, config, record,
                exact ? std::optional<double>(exact->free_energy) : std::nullopt);
            for (const auto &f : run_files) {
                files.push_back(fs::relative(run_dir / f, dir).generic_string());
            }

            const auto &state = record.final_state;
            WeightedInputs inputs;
            if (record.enumeration) {
                inputs = enumerate_inputs(state.model);
            } else {
                Rng eval_rng(config.seed ^ eval_stream ^ b);
                inputs = group_samples(sample(state.model, config.batch_size, eval_rng));
            }
            const Observables obs =
                measure_observables(state, h, beta, inputs, config.threads);
            table << csv_number(beta) << ',' << csv_number(obs.energy) << ','
                  << csv_number(obs.specific_heat) << ',' << csv_number(obs.entropy)
                  << ',' << csv_number(obs.entropy / lattice.n_sites()) << ','
                  << csv_number(obs.purity) << ',' << csv_number(obs.loss) << ','
                  << (exact ? csv_number(exact->energy) : "") << ','
                  << (exact ? csv_number(exact->specific_heat) : "") << ','
                  << (exact ? csv_number(exact->entropy) : "") << '\n';
            previous = state;
        }
        if (config.write_csv) {
            auto out = open_output(dir / "observables.csv");
            out << table.str();
            files.insert(files.begin(), "observables.csv");
        }
        write_manifest(dir, config, "sweep", gamma, files, enumeration);
        log << "  observables -> " << (dir / "observables.csv").string() << '\n';
    }
}

void cmd_spectrum(const RunConfig &config, std::ostream &log) {
    config.validate();
    std::ostringstream table;
    table << manifest_line(config);
    table << "gamma,bitstring,sampled_energy,log_prob,nearest_exact_eigenvalue,"
             "abs_error\n";
    const fs::path root(config.output_directory);
    std::vector<std::string> files;
    for (std::size_t g = 0; g < config.gammas.size(); ++g) {
        const double gamma = config.gammas[g];
        const LatticeSpec lattice = config.lattice(gamma);
        const PauliSum h = build_tfim(lattice);
        VariationalState state;
        if (!config.spectrum_checkpoint.empty()) {
            fs::path ckpt(config.spectrum_checkpoint);
            if (config.gammas.size() > 1) {
                ckpt /= "gamma_" + number_tag(gamma);
            }
            state.model = load_made_checkpoint((ckpt / "model.json").string());
            state.circuit = build_ansatz(lattice, config.depth);
            state.theta = load_theta_checkpoint(state.circuit,
                                                (ckpt / "theta.json").string());
            state.validate();
            log << "spectrum: gamma " << gamma << " from checkpoint "
                << ckpt.string() << '\n';
        } else {
            const double beta = single_beta(config, "spectrum");
            const TrainConfig train_config = config.train_config(beta);
            log << "spectrum: gamma " << gamma << " training at beta " << beta << '\n';
            RunRecord record = train(train_config, h, fresh_state(config, train_config),
                                     progress_logger(config, log, "  "));
            const fs::path dir = gamma_directory(config, gamma);
            const auto run_files = write_training_artifacts(dir, config, record, {});
            for (const auto &f : run_files) {
                files.push_back(fs::relative(dir / f, root).generic_string());
            }
            state = std::move(record.final_state);
        }
        std::vector<double> eigenvalues;
        if (has_oracle(config)) {
            eigenvalues = exact_spectrum(h);
        }
        Rng rng(config.seed ^ spectrum_stream ^ g);
        const auto entries = excitation_spectrum(state.model, state.circuit, state.theta,
                                                 h, config.spectrum_samples, rng);
        for (const auto &e : entries) {
            table << csv_number(gamma) << ',' << e.bits.to_string() << ','
                  << csv_number(e.energy) << ',' << csv_number(e.log_prob) << ',';
            if (!eigenvalues.empty()) {
                const double nearest = nearest_eigenvalue(eigenvalues, e.energy);
                table << csv_number(nearest) << ',' << csv_number(std::abs(e.energy - nearest));
            } else {
                table << ',';
            }
            table << '\n';
        }
    }
    if (config.write_csv) {
        auto out = open_output(root / "spectrum.csv");
        out << table.str();
        files.insert(files.begin(), "spectrum.csv");
    }
    write_manifest(root, config, "spectrum",
                   config.gammas.size() == 1 ? config.gammas.front() : -1.0, files,
                   config.train_config(config.betas.front()).uses_enumeration(config.n_sites()));
    log << "  spectrum -> " << (root / "spectrum.csv").string() << '\n';
}

void cmd_oracle(const RunConfig &config, std::ostream &log) {
    config.validate();
    if (!has_oracle(config)) {
        throw Error("oracle: exact diagonalisation limited to 12 sites");
    }
    std::vector<OracleRow> rows;
    std::ostringstream eigen_table;
    eigen_table << manifest_line(config);
    eigen_table << "gamma,index,eigenvalue\n";
    for (const double gamma : config.gammas) {
        const LatticeSpec lattice = config.lattice(gamma);
        const auto spectrum = exact_spectrum(build_tfim(lattice));
        for (std::size_t k = 0; k < spectrum.size(); ++k) {
            eigen_table << csv_number(gamma) << ',' << k << ','
                        << csv_number(spectrum[k]) << '\n';
        }
        for (const double beta : config.betas) {
            rows.push_back({lattice, thermal_from_spectrum(spectrum, beta)});
        }
    }
    const fs::path root(config.output_directory);
    auto oracle = open_output(root / "oracle.csv");
    oracle << manifest_line(config);
    write_oracle_csv(oracle, rows);
    auto eigen = open_output(root / "eigenvalues.csv");
    eigen << eigen_table.str();
    write_manifest(root, config, "oracle",
                   config.gammas.size() == 1 ? config.gammas.front() : -1.0,
                   {"oracle.csv", "eigenvalues.csv"}, true);
    log << "oracle: " << rows.size() << " rows -> " << (root / "oracle.csv").string()
        << '\n';
}

} // namespace betavqe
