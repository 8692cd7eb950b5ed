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
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "betavqe/bitstring.hpp"

namespace betavqe {

using Rng = std::mt19937_64;

/// Bernoulli outputs are clamped to [eps, 1 - eps] so log-probabilities stay finite.
constexpr double made_probability_clamp = 1e-7;

struct BitSample {
    Bitstring bits;
    double log_prob = 0.0;
};

enum class MadeInit {
    /// Output layer and all biases zero, input layer uniform: p(x) is exactly
    /// uniform but hidden units are alive.
    Cold,
    /// Every weight uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)], biases zero.
    Uniform,
    /// Every parameter zero.
    Zero,
};

/**
 * @brief Single-hidden-layer masked autoencoder over n binary sites.
 *
 *     xhat = sigmoid(W2 relu(W1 x + b1) + b2)
 *
 * Hidden unit h carries a label c(h) in 1..n-1, assigned cyclically. With
 * 0-based sites, W1[h, j] is live iff j < c(h) and W2[i, h] is live iff
 * c(h) <= i, so xhat_i depends only on x_0 .. x_{i-1} and xhat_0 is a pure
 * bias. Masked weights are held at zero.
 *
 * Parameters live in one flat vector laid out as
 * [W1 (row-major, hidden x n), b1, W2 (row-major, n x hidden), b2].
 */
class MadeModel {
  public:
    using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                    Eigen::RowMajor>;
    using MatrixView = Eigen::Map<const RowMatrix>;
    using VectorView = Eigen::Map<const Eigen::VectorXd>;

    MadeModel() = default;
    /// All parameters zero.
    MadeModel(int n_sites, int hidden);
    MadeModel(int n_sites, int hidden, MadeInit init, Rng &rng);

    [[nodiscard]] int n_sites() const noexcept { return n_sites_; }
    [[nodiscard]] int hidden() const noexcept { return hidden_; }
    [[nodiscard]] std::size_t n_params() const noexcept { return params_.size(); }

    [[nodiscard]] std::span<const double> parameters() const noexcept {
        return params_;
    }
    /// Copies `values` in and re-zeros masked weights.
    void set_parameters(std::span<const double> values);

    [[nodiscard]] MatrixView W1() const noexcept;
    [[nodiscard]] VectorView b1() const noexcept;
    [[nodiscard]] MatrixView W2() const noexcept;
    [[nodiscard]] VectorView b2() const noexcept;
    [[nodiscard]] const RowMatrix &mask1() const noexcept { return mask1_; }
    [[nodiscard]] const RowMatrix &mask2() const noexcept { return mask2_; }
    [[nodiscard]] int hidden_label(int h) const noexcept;

    /// Offsets of each block inside the flat parameter vector.
    [[nodiscard]] std::size_t offset_b1() const noexcept;
    [[nodiscard]] std::size_t offset_W2() const noexcept;
    [[nodiscard]] std::size_t offset_b2() const noexcept;

    void set_output_bias(std::span<const double> bias);

    /// Conditional Bernoulli parameters xhat in (0, 1)^n.
    [[nodiscard]] Eigen::VectorXd forward(const Bitstring &x) const;
    [[nodiscard]] double log_prob(const Bitstring &x) const;
    /// d ln p(x) / d phi in the flat parameter layout; returns ln p(x).
    double grad_log_prob_into(const Bitstring &x, std::span<double> gradient) const;
    [[nodiscard]] std::vector<double> grad_log_prob(const Bitstring &x) const;

    /// One ancestral sample: x_0, then x_1 | x_0, and so on.
    [[nodiscard]] BitSample sample_one(Rng &rng) const;

  private:
    void build_masks();
    void apply_masks();
    void check_input(const Bitstring &x) const;

    int n_sites_ = 0;
    int hidden_ = 0;
    std::vector<double> params_;
    RowMatrix mask1_;
    RowMatrix mask2_;
};

/// `batch` independent ancestral samples.
[[nodiscard]] std::vector<BitSample> sample(const MadeModel &model, int batch,
                                            Rng &rng);

/// Sample mean of -ln p and of p over a batch drawn from the model.
struct EntropyPurity {
    double entropy = 0.0;
    double purity = 0.0;
};
[[nodiscard]] EntropyPurity
entropy_and_purity_estimates(std::span<const BitSample> samples);

/// Versioned JSON checkpoint with named arrays (W1, b1, W2, b2, M1, M2).
void save_made_checkpoint(const MadeModel &model, const std::string &path);
[[nodiscard]] MadeModel load_made_checkpoint(const std::string &path);
[[nodiscard]] std::string made_to_json(const MadeModel &model);
[[nodiscard]] MadeModel made_from_json(const std::string &text);

} // namespace betavqe
