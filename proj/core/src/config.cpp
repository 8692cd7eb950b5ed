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

#include "betavqe/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "betavqe/csv.hpp"
#include "betavqe/error.hpp"

namespace betavqe {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> &allowed_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"lattice", {"rows", "cols", "gamma"}},
        {"circuit", {"depth"}},
        {"model", {"hidden", "init"}},
        {"train",
         {"beta", "beta_list", "batch_size", "epochs", "lr_phi", "lr_theta",
          "adam_beta1", "adam_beta2", "adam_epsilon", "seed",
          "deterministic_smalln", "enumeration_threshold", "warm_start",
          "log_every"}},
        {"output", {"directory", "formats"}},
        {"spectrum", {"n_samples", "checkpoint"}},
    };
    return keys;
}

[[noreturn]] void bad_value(const std::string &key, const std::string &value,
                            const std::string &why) {
    throw Error("config: " + key + " = '" + value + "': " + why);
}

template <typename T> T parse_scalar(const std::string &key, std::string value) {
    boost::trim(value);
    try {
        return boost::lexical_cast<T>(value);
    } catch (const boost::bad_lexical_cast &) {
        bad_value(key, value, "not a valid number");
    }
}

bool parse_bool(const std::string &key, std::string value) {
    boost::trim(value);
    boost::to_lower(value);
    if (value == "true" || value == "1" || value == "yes" || value == "on") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no" || value == "off") {
        return false;
    }
    bad_value(key, value, "expected true or false");
}

/// Drops a trailing "; comment" or "# comment" (the marker must follow
/// whitespace or start the value) and surrounding whitespace.
std::string strip_inline_comment(std::string value) {
    for (std::size_t i = 0; i < value.size(); ++i) {
        if ((value[i] == ';' || value[i] == '#') &&
            (i == 0 || value[i - 1] == ' ' || value[i - 1] == '\t')) {
            value.resize(i);
            break;
        }
    }
    boost::trim(value);
    return value;
}

std::vector<std::string> split_list(const std::string &value) {
    std::vector<std::string> parts;
    boost::split(parts, value, boost::is_any_of(","));
    for (auto &p : parts) {
        boost::trim(p);
    }
    return parts;
}

std::vector<double> parse_number_list(const std::string &key,
                                      const std::string &value) {
    std::vector<double> out;
    for (const auto &part : split_list(value)) {
        if (part.empty()) {
            bad_value(key, value, "empty list entry");
        }
        out.push_back(parse_scalar<double>(key, part));
    }
    return out;
}

std::string join_numbers(const std::vector<double> &values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += csv_number(values[i]);
    }
    return out;
}

std::string exact_number(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

const char *init_name(MadeInit init) {
    switch (init) {
    case MadeInit::Cold:
        return "cold";
    case MadeInit::Uniform:
        return "uniform";
    case MadeInit::Zero:
        return "zero";
    }
    return "cold";
}

} // namespace

LatticeSpec RunConfig::lattice(double gamma) const {
    LatticeSpec spec{rows, cols, gamma};
    spec.validate();
    return spec;
}

TrainConfig RunConfig::train_config(double beta) const {
    TrainConfig config;
    config.beta = beta;
    config.batch_size = batch_size;
    config.epochs = epochs;
    config.lr_phi = lr_phi;
    config.lr_theta = lr_theta;
    config.adam = adam;
    config.seed = seed;
    config.deterministic_smalln = deterministic_smalln;
    config.enumeration_threshold = enumeration_threshold;
    config.hidden = hidden;
    config.init = init;
    config.threads = threads;
    return config;
}

void RunConfig::validate() const {
    BETAVQE_ABORT_IF(rows < 1 || cols < 1, "config: lattice rows/cols must be >= 1");
    BETAVQE_ABORT_IF(n_sites() > 20,
                     "config: lattice too large for statevector simulation (max 20 sites)");
    BETAVQE_ABORT_IF(gammas.empty(), "config: lattice.gamma must not be empty");
    for (const double g : gammas) {
        BETAVQE_ABORT_IF(!std::isfinite(g) || g < 0.0,
                         "config: lattice.gamma must be finite and >= 0");
    }
    BETAVQE_ABORT_IF(depth < 1, "config: circuit.depth must be >= 1");
    BETAVQE_ABORT_IF(betas.empty(), "config: beta list must not be empty");
    for (const double b : betas) {
        BETAVQE_ABORT_IF(!std::isfinite(b) || b < 0.0,
                         "config: beta values must be finite and >= 0");
    }
    BETAVQE_ABORT_IF(spectrum_samples < 1, "config: spectrum.n_samples must be >= 1");
    BETAVQE_ABORT_IF(log_every < 0, "config: train.log_every must be >= 0");
    BETAVQE_ABORT_IF(output_directory.empty(), "config: output.directory is empty");
    train_config(betas.front()).validate();
}

std::string RunConfig::canonical_text() const {
    std::ostringstream out;
    out << "[lattice]\n"
        << "rows = " << rows << '\n'
        << "cols = " << cols << '\n'
        << "gamma = " << join_numbers(gammas) << '\n'
        << "[circuit]\n"
        << "depth = " << depth << '\n'
        << "[model]\n"
        << "hidden = " << hidden << '\n'
        << "init = " << init_name(init) << '\n'
        << "[train]\n"
        << (beta_is_list ? "beta_list = " : "beta = ") << join_numbers(betas) << '\n'
        << "batch_size = " << batch_size << '\n'
        << "epochs = " << epochs << '\n'
        << "lr_phi = " << exact_number(lr_phi) << '\n'
        << "lr_theta = " << exact_number(lr_theta) << '\n'
        << "adam_beta1 = " << exact_number(adam.beta1) << '\n'
        << "adam_beta2 = " << exact_number(adam.beta2) << '\n'
        << "adam_epsilon = " << exact_number(adam.epsilon) << '\n'
        << "seed = " << seed << '\n'
        << "deterministic_smalln = " << (deterministic_smalln ? "true" : "false") << '\n'
        << "enumeration_threshold = " << enumeration_threshold << '\n'
        << "warm_start = " << (warm_start ? "true" : "false") << '\n'
        << "[output]\n"
        << "formats = ";
    std::vector<std::string> formats;
    if (write_csv) {
        formats.emplace_back("csv");
    }
    if (write_checkpoints) {
        formats.emplace_back("checkpoint");
    }
    for (std::size_t i = 0; i < formats.size(); ++i) {
        out << (i > 0 ? ", " : "") << formats[i];
    }
    out << '\n'
        << "[spectrum]\n"
        << "n_samples = " << spectrum_samples << '\n';
    if (!spectrum_checkpoint.empty()) {
        out << "checkpoint = " << spectrum_checkpoint << '\n';
    }
    return out.str();
}

std::string RunConfig::hash_hex() const {
    char buffer[20];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical_text())));
    return buffer;
}

std::uint64_t fnv1a64(std::string_view data) noexcept {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

RunConfig parse_run_config(std::string_view text) {
    pt::ptree tree;
    std::istringstream stream{std::string(text)};
    try {
        pt::read_ini(stream, tree);
    } catch (const pt::ini_parser_error &e) {
        throw Error(std::string("config: ") + e.what());
    }

    const auto &allowed = allowed_keys();
    for (const auto &[section, body] : tree) {
        const auto it = allowed.find(section);
        if (it == allowed.end() || body.empty()) {
            throw Error("config: unknown section or top-level key '" + section + "'");
        }
        for (const auto &[key, value] : body) {
            if (!it->second.contains(key)) {
                throw Error("config: unknown key '" + section + "." + key + "'");
            }
        }
    }

    RunConfig config;
    auto get = [&](const char *path) -> std::optional<std::string> {
        if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) {
            return strip_inline_comment(*v);
        }
        return std::nullopt;
    };

    if (auto v = get("lattice.rows")) config.rows = parse_scalar<int>("lattice.rows", *v);
    if (auto v = get("lattice.cols")) config.cols = parse_scalar<int>("lattice.cols", *v);
    if (auto v = get("lattice.gamma")) config.gammas = parse_number_list("lattice.gamma", *v);
    if (auto v = get("circuit.depth")) config.depth = parse_scalar<int>("circuit.depth", *v);
    if (auto v = get("model.hidden")) config.hidden = parse_scalar<int>("model.hidden", *v);
    if (auto v = get("model.init")) {
        std::string name = *v;
        boost::trim(name);
        if (name == "cold") {
            config.init = MadeInit::Cold;
        } else if (name == "uniform") {
            config.init = MadeInit::Uniform;
        } else if (name == "zero") {
            config.init = MadeInit::Zero;
        } else {
            bad_value("model.init", name, "expected cold, uniform or zero");
        }
    }

    const auto beta = get("train.beta");
    const auto beta_list = get("train.beta_list");
    if (beta && beta_list) {
        throw Error("config: give either train.beta or train.beta_list, not both");
    }
    if (beta) {
        config.betas = {parse_scalar<double>("train.beta", *beta)};
    }
    if (beta_list) {
        config.betas = parse_number_list("train.beta_list", *beta_list);
        config.beta_is_list = true;
    }
    if (auto v = get("train.batch_size")) config.batch_size = parse_scalar<int>("train.batch_size", *v);
    if (auto v = get("train.epochs")) config.epochs = parse_scalar<int>("train.epochs", *v);
    if (auto v = get("train.lr_phi")) config.lr_phi = parse_scalar<double>("train.lr_phi", *v);
    if (auto v = get("train.lr_theta")) config.lr_theta = parse_scalar<double>("train.lr_theta", *v);
    if (auto v = get("train.adam_beta1")) config.adam.beta1 = parse_scalar<double>("train.adam_beta1", *v);
    if (auto v = get("train.adam_beta2")) config.adam.beta2 = parse_scalar<double>("train.adam_beta2", *v);
    if (auto v = get("train.adam_epsilon")) config.adam.epsilon = parse_scalar<double>("train.adam_epsilon", *v);
    if (auto v = get("train.seed")) config.seed = parse_scalar<std::uint64_t>("train.seed", *v);
    if (auto v = get("train.deterministic_smalln")) config.deterministic_smalln = parse_bool("train.deterministic_smalln", *v);
    if (auto v = get("train.enumeration_threshold")) config.enumeration_threshold = parse_scalar<int>("train.enumeration_threshold", *v);
    if (auto v = get("train.warm_start")) config.warm_start = parse_bool("train.warm_start", *v);
    if (auto v = get("train.log_every")) config.log_every = parse_scalar<int>("train.log_every", *v);
    if (auto v = get("output.directory")) {
        config.output_directory = boost::trim_copy(*v);
    }
    if (auto v = get("output.formats")) {
        config.write_csv = false;
        config.write_checkpoints = false;
        for (const auto &format : split_list(*v)) {
            if (format == "csv") {
                config.write_csv = true;
            } else if (format == "checkpoint") {
                config.write_checkpoints = true;
            } else {
                bad_value("output.formats", *v, "entries must be csv or checkpoint");
            }
        }
    }
    if (auto v = get("spectrum.n_samples")) config.spectrum_samples = parse_scalar<int>("spectrum.n_samples", *v);
    if (auto v = get("spectrum.checkpoint")) config.spectrum_checkpoint = boost::trim_copy(*v);

    config.validate();
    return config;
}

RunConfig load_run_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

} // namespace betavqe
