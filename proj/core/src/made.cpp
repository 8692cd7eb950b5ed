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

#include "betavqe/made.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "betavqe/error.hpp"

namespace betavqe {

namespace {

using MutableMatrixView = Eigen::Map<MadeModel::RowMatrix>;
using MutableVectorView = Eigen::Map<Eigen::VectorXd>;

inline double sigmoid(double z) noexcept {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

inline double clamp_probability(double p) noexcept {
    return std::clamp(p, made_probability_clamp, 1.0 - made_probability_clamp);
}

inline bool is_clamped(double p) noexcept {
    return p <= made_probability_clamp || p >= 1.0 - made_probability_clamp;
}

Eigen::VectorXd as_vector(const Bitstring &x) {
    Eigen::VectorXd v(x.size());
    for (int j = 0; j < x.size(); ++j) {
        v[j] = x[j] ? 1.0 : 0.0;
    }
    return v;
}

constexpr int checkpoint_version = 1;

} // namespace

MadeModel::MadeModel(int n_sites, int hidden) : n_sites_(n_sites), hidden_(hidden) {
    BETAVQE_ABORT_IF(n_sites < 1 || n_sites > Bitstring::max_bits,
                     "MADE site count out of range");
    BETAVQE_ABORT_IF(hidden < 1, "MADE needs at least one hidden unit");
    const auto n = static_cast<std::size_t>(n_sites);
    const auto k = static_cast<std::size_t>(hidden);
    params_.assign(2 * n * k + k + n, 0.0);
    build_masks();
}

MadeModel::MadeModel(int n_sites, int hidden, MadeInit init, Rng &rng)
    : MadeModel(n_sites, hidden) {
    if (init == MadeInit::Zero) {
        return;
    }
    const double s1 = 1.0 / std::sqrt(static_cast<double>(n_sites_));
    const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden_));
    std::uniform_real_distribution<double> w1_dist(-s1, s1);
    std::uniform_real_distribution<double> w2_dist(-s2, s2);
    const std::size_t w1_size = offset_b1();
    for (std::size_t i = 0; i < w1_size; ++i) {
        params_[i] = w1_dist(rng);
    }
    if (init == MadeInit::Uniform) {
        for (std::size_t i = offset_W2(); i < offset_b2(); ++i) {
            params_[i] = w2_dist(rng);
        }
    }
    apply_masks();
}

int MadeModel::hidden_label(int h) const noexcept {
    if (n_sites_ < 2) {
        return 0;
    }
    return 1 + (h % (n_sites_ - 1));
}

void MadeModel::build_masks() {
    mask1_ = RowMatrix::Zero(hidden_, n_sites_);
    mask2_ = RowMatrix::Zero(n_sites_, hidden_);
    if (n_sites_ < 2) {
        return;
    }
    for (int h = 0; h < hidden_; ++h) {
        const int label = hidden_label(h);
        for (int j = 0; j < label; ++j) {
            mask1_(h, j) = 1.0;
        }
        for (int i = label; i < n_sites_; ++i) {
            mask2_(i, h) = 1.0;
        }
    }
}

void MadeModel::apply_masks() {
    MutableMatrixView w1(params_.data(), hidden_, n_sites_);
    MutableMatrixView w2(params_.data() + offset_W2(), n_sites_, hidden_);
    w1.array() *= mask1_.array();
    w2.array() *= mask2_.array();
}

std::size_t MadeModel::offset_b1() const noexcept {
    return static_cast<std::size_t>(hidden_) * static_cast<std::size_t>(n_sites_);
}
std::size_t MadeModel::offset_W2() const noexcept {
    return offset_b1() + static_cast<std::size_t>(hidden_);
}
std::size_t MadeModel::offset_b2() const noexcept {
    return offset_W2() +
           static_cast<std::size_t>(hidden_) * static_cast<std::size_t>(n_sites_);
}

MadeModel::MatrixView MadeModel::W1() const noexcept {
    return {params_.data(), hidden_, n_sites_};
}
MadeModel::VectorView MadeModel::b1() const noexcept {
    return {params_.data() + offset_b1(), hidden_};
}
MadeModel::MatrixView MadeModel::W2() const noexcept {
    return {params_.data() + offset_W2(), n_sites_, hidden_};
}
MadeModel::VectorView MadeModel::b2() const noexcept {
    return {params_.data() + offset_b2(), n_sites_};
}

void MadeModel::set_parameters(std::span<const double> values) {
    BETAVQE_ABORT_IF(values.size() != params_.size(),
                     "MADE parameter vector has the wrong length");
    for (const double v : values) {
        BETAVQE_ABORT_IF_NOT(std::isfinite(v), "MADE parameter is not finite");
    }
    std::copy(values.begin(), values.end(), params_.begin());
    apply_masks();
}

void MadeModel::set_output_bias(std::span<const double> bias) {
    BETAVQE_ABORT_IF(bias.size() != static_cast<std::size_t>(n_sites_),
                     "output bias has the wrong length");
    std::copy(bias.begin(), bias.end(),
              params_.begin() + static_cast<std::ptrdiff_t>(offset_b2()));
}

void MadeModel::check_input(const Bitstring &x) const {
    BETAVQE_ABORT_IF(x.size() != n_sites_,
                     "bitstring length does not match the model");
}

Eigen::VectorXd MadeModel::forward(const Bitstring &x) const {
    check_input(x);
    const Eigen::VectorXd hidden_act =
        (W1() * as_vector(x) + b1()).cwiseMax(0.0);
    Eigen::VectorXd out = W2() * hidden_act + b2();
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        out[i] = clamp_probability(sigmoid(out[i]));
    }
    return out;
}

double MadeModel::log_prob(const Bitstring &x) const {
    const Eigen::VectorXd xhat = forward(x);
    double total = 0.0;
    for (int i = 0; i < n_sites_; ++i) {
        total += x[i] ? std::log(xhat[i]) : std::log1p(-xhat[i]);
    }
    return total;
}

double MadeModel::grad_log_prob_into(const Bitstring &x,
                                     std::span<double> gradient) const {
    check_input(x);
    BETAVQE_ABORT_IF(gradient.size() != params_.size(),
                     "gradient buffer has the wrong length");
    const Eigen::VectorXd input = as_vector(x);
    const Eigen::VectorXd pre = W1() * input + b1();
    const Eigen::VectorXd act = pre.cwiseMax(0.0);
    const Eigen::VectorXd logits = W2() * act + b2();

    Eigen::VectorXd delta(n_sites_);
    double log_p = 0.0;
    for (int i = 0; i < n_sites_; ++i) {
        const double p = clamp_probability(sigmoid(logits[i]));
        log_p += x[i] ? std::log(p) : std::log1p(-p);
        // d/dz [x ln s(z) + (1 - x) ln(1 - s(z))] = x - s(z); zero where clamped.
        delta[i] = is_clamped(p) ? 0.0 : input[i] - p;
    }

    MutableMatrixView g_w1(gradient.data(), hidden_, n_sites_);
    MutableVectorView g_b1(gradient.data() + offset_b1(), hidden_);
    MutableMatrixView g_w2(gradient.data() + offset_W2(), n_sites_, hidden_);
    MutableVectorView g_b2(gradient.data() + offset_b2(), n_sites_);

    g_b2 = delta;
    g_w2.noalias() = delta * act.transpose();
    g_w2.array() *= mask2_.array();
    Eigen::VectorXd back = W2().transpose() * delta;
    for (int h = 0; h < hidden_; ++h) {
        if (pre[h] <= 0.0) {
            back[h] = 0.0;
        }
    }
    g_b1 = back;
    g_w1.noalias() = back * input.transpose();
    g_w1.array() *= mask1_.array();
    return log_p;
}

std::vector<double> MadeModel::grad_log_prob(const Bitstring &x) const {
    std::vector<double> gradient(params_.size(), 0.0);
    grad_log_prob_into(x, gradient);
    return gradient;
}

BitSample MadeModel::sample_one(Rng &rng) const {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const auto w1 = W1();
    const auto w2 = W2();
    const auto bias2 = b2();
    Eigen::VectorXd pre = b1();
    Eigen::VectorXd act(hidden_);
    Bitstring bits(n_sites_, 0);
    for (int i = 0; i < n_sites_; ++i) {
        act = pre.cwiseMax(0.0);
        const double p = clamp_probability(sigmoid(w2.row(i).dot(act) + bias2[i]));
        const bool bit = uniform(rng) < p;
        bits.set(i, bit);
        if (bit) {
            pre += w1.col(i);
        }
    }
    return {bits, log_prob(bits)};
}

std::vector<BitSample> sample(const MadeModel &model, int batch, Rng &rng) {
    BETAVQE_ABORT_IF(batch < 1, "sample batch must be positive");
    std::vector<BitSample> out;
    out.reserve(static_cast<std::size_t>(batch));
    for (int b = 0; b < batch; ++b) {
        out.push_back(model.sample_one(rng));
    }
    return out;
}

EntropyPurity entropy_and_purity_estimates(std::span<const BitSample> samples) {
    BETAVQE_ABORT_IF(samples.empty(), "entropy estimate needs samples");
    double entropy = 0.0;
    double purity = 0.0;
    for (const auto &s : samples) {
        entropy -= s.log_prob;
        purity += std::exp(s.log_prob);
    }
    const auto count = static_cast<double>(samples.size());
    return {entropy / count, purity / count};
}

std::string made_to_json(const MadeModel &model) {
    using nlohmann::json;
    auto matrix = [](const auto &m) {
        json rows = json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                row.push_back(m(r, c));
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };
    auto vector = [](const auto &v) {
        json out = json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            out.push_back(v[i]);
        }
        return out;
    };
    auto mask = [](const MadeModel::RowMatrix &m) {
        json rows = json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            std::string row;
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                row.push_back(m(r, c) != 0.0 ? '1' : '0');
            }
            rows.push_back(row);
        }
        return rows;
    };
    json doc;
    doc["format"] = "betavqe-made";
    doc["version"] = checkpoint_version;
    doc["n_sites"] = model.n_sites();
    doc["hidden"] = model.hidden();
    doc["W1"] = matrix(model.W1());
    doc["b1"] = vector(model.b1());
    doc["W2"] = matrix(model.W2());
    doc["b2"] = vector(model.b2());
    doc["M1"] = mask(model.mask1());
    doc["M2"] = mask(model.mask2());
    return doc.dump(1);
}

MadeModel made_from_json(const std::string &text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception &e) {
        throw Error(std::string("malformed MADE checkpoint: ") + e.what());
    }
    try {
        BETAVQE_ABORT_IF(doc.at("format").get<std::string>() != "betavqe-made",
                         "not a MADE checkpoint");
        BETAVQE_ABORT_IF(doc.at("version").get<int>() != checkpoint_version,
                         "unsupported MADE checkpoint version");
        MadeModel model(doc.at("n_sites").get<int>(), doc.at("hidden").get<int>());
        const auto n = static_cast<std::size_t>(model.n_sites());
        const auto k = static_cast<std::size_t>(model.hidden());
        std::vector<double> flat;
        flat.reserve(model.n_params());
        auto read_matrix = [&](const json &m, std::size_t rows, std::size_t cols) {
            BETAVQE_ABORT_IF(m.size() != rows, "checkpoint matrix has wrong rows");
            for (const auto &row : m) {
                BETAVQE_ABORT_IF(row.size() != cols,
                                 "checkpoint matrix has wrong columns");
                for (const auto &v : row) {
                    flat.push_back(v.get<double>());
                }
            }
        };
        auto read_vector = [&](const json &v, std::size_t size) {
            BETAVQE_ABORT_IF(v.size() != size, "checkpoint vector has wrong size");
            for (const auto &e : v) {
                flat.push_back(e.get<double>());
            }
        };
        read_matrix(doc.at("W1"), k, n);
        read_vector(doc.at("b1"), k);
        read_matrix(doc.at("W2"), n, k);
        read_vector(doc.at("b2"), n);
        auto check_mask = [](const json &stored, const MadeModel::RowMatrix &expected) {
            BETAVQE_ABORT_IF(stored.size() != static_cast<std::size_t>(expected.rows()),
                             "checkpoint mask has wrong rows");
            for (Eigen::Index r = 0; r < expected.rows(); ++r) {
                const auto row = stored[static_cast<std::size_t>(r)].get<std::string>();
                BETAVQE_ABORT_IF(row.size() != static_cast<std::size_t>(expected.cols()),
                                 "checkpoint mask has wrong columns");
                for (Eigen::Index c = 0; c < expected.cols(); ++c) {
                    const bool live = row[static_cast<std::size_t>(c)] == '1';
                    BETAVQE_ABORT_IF(live != (expected(r, c) != 0.0),
                                     "checkpoint mask differs from model mask");
                }
            }
        };
        check_mask(doc.at("M1"), model.mask1());
        check_mask(doc.at("M2"), model.mask2());
        model.set_parameters(flat);
        return model;
    } catch (const json::exception &e) {
        throw Error(std::string("malformed MADE checkpoint: ") + e.what());
    }
}

void save_made_checkpoint(const MadeModel &model, const std::string &path) {
    std::ofstream out(path);
    BETAVQE_ABORT_IF(!out, ("cannot write checkpoint " + path).c_str());
    out << made_to_json(model) << '\n';
}

MadeModel load_made_checkpoint(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot read checkpoint " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return made_from_json(buffer.str());
}

} // namespace betavqe
