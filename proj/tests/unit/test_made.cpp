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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "betavqe/error.hpp"
#include "betavqe/made.hpp"
#include "test_support.hpp"

using namespace betavqe;
using Catch::Approx;

namespace {

double log_sum_exp_all(const MadeModel &model) {
    const int n = model.n_sites();
    double total = 0.0;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        total += std::exp(model.log_prob(Bitstring(n, v)));
    }
    return total;
}

} // namespace

TEST_CASE("MADE parameter layout", "[made]") {
    const MadeModel model(4, 6);
    CHECK(model.n_params() == 6 * 4 + 6 + 4 * 6 + 4);
    CHECK(model.offset_b1() == 24);
    CHECK(model.offset_W2() == 30);
    CHECK(model.offset_b2() == 54);
    CHECK_THROWS_AS(MadeModel(0, 4), Error);
    CHECK_THROWS_AS(MadeModel(4, 0), Error);
}

TEST_CASE("zero-initialised MADE is the uniform distribution", "[made]") {
    const MadeModel model(5, 8);
    for (std::uint64_t v = 0; v < 32; ++v) {
        CHECK(model.log_prob(Bitstring(5, v)) == Approx(-5.0 * std::log(2.0)).margin(1e-14));
    }
}

TEST_CASE("mask labels and connectivity are autoregressive", "[made][mask]") {
    for (int n : {1, 2, 3, 5, 9}) {
        const MadeModel model(n, 13);
        const auto &m1 = model.mask1();
        const auto &m2 = model.mask2();
        // Connectivity of output i to input j through the hidden layer.
        const MadeModel::RowMatrix path = m2 * m1;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j >= i) {
                    CHECK(path(i, j) == 0.0);
                }
            }
            // Every output beyond the first sees all earlier inputs.
            for (int j = 0; j < i; ++j) {
                CHECK(path(i, j) > 0.0);
            }
        }
        for (int h = 0; h < 13; ++h) {
            const int label = model.hidden_label(h);
            if (n == 1) {
                CHECK(label == 0); // single site: hidden layer is disconnected
            } else {
                CHECK(label >= 1);
                CHECK(label <= n - 1);
            }
        }
    }
}

TEST_CASE("output i does not depend on inputs j >= i", "[made][mask][property]") {
    Rng rng(101);
    const int n = 7;
    const MadeModel model = test::random_made(n, 20, rng, 2.0);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); v += 5) {
        const Bitstring x(n, v);
        const Eigen::VectorXd base = model.forward(x);
        for (int j = 0; j < n; ++j) {
            Bitstring flipped = x;
            flipped.set(j, !x[j]);
            const Eigen::VectorXd out = model.forward(flipped);
            for (int i = 0; i <= j; ++i) {
                CHECK(out[i] == base[i]); // exact, not approximate
            }
        }
    }
}

TEST_CASE("set_parameters keeps masked weights at zero", "[made][mask]") {
    Rng rng(3);
    const MadeModel model = test::random_made(4, 9, rng);
    const auto w1 = model.W1();
    const auto w2 = model.W2();
    for (Eigen::Index r = 0; r < w1.rows(); ++r) {
        for (Eigen::Index c = 0; c < w1.cols(); ++c) {
            if (model.mask1()(r, c) == 0.0) {
                CHECK(w1(r, c) == 0.0);
            }
        }
    }
    for (Eigen::Index r = 0; r < w2.rows(); ++r) {
        for (Eigen::Index c = 0; c < w2.cols(); ++c) {
            if (model.mask2()(r, c) == 0.0) {
                CHECK(w2(r, c) == 0.0);
            }
        }
    }
}

TEST_CASE("probabilities sum to one", "[made][property]") {
    Rng rng(55);
    for (int n = 1; n <= 10; ++n) {
        const MadeModel model = test::random_made(n, 2 * n + 3, rng, 1.0);
        CHECK(std::abs(log_sum_exp_all(model) - 1.0) < 1e-10);
    }
}

TEST_CASE("grad_log_prob matches finite differences", "[made][oracle]") {
    Rng rng(9);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + trial % 5;
        MadeModel model = test::random_made(n, 7, rng, 1.0);
        const Bitstring x(n, static_cast<std::uint64_t>(trial * 7) % (std::uint64_t{1} << n));
        const std::vector<double> grad = model.grad_log_prob(x);
        const std::vector<double> base(model.parameters().begin(), model.parameters().end());
        auto f = [&](std::span<const double> p) {
            MadeModel copy = model;
            copy.set_parameters(p);
            return copy.log_prob(x);
        };
        const auto fd = test::central_difference(f, base, 1e-6);
        // Masked coordinates are pinned to zero by set_parameters, so finite
        // differences there are zero as well.
        CHECK(test::max_abs_diff(grad, fd) < 1e-6);
        std::vector<double> into(model.n_params());
        CHECK(model.grad_log_prob_into(x, into) == Approx(model.log_prob(x)).margin(1e-14));
        CHECK(test::max_abs_diff(into, grad) == 0.0);
    }
}

TEST_CASE("score-function identity: E_p[grad log p] = 0", "[made][property]") {
    Rng rng(12);
    for (int n = 2; n <= 6; ++n) {
        const MadeModel model = test::random_made(n, 11, rng, 1.5);
        std::vector<double> total(model.n_params(), 0.0);
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
            const Bitstring x(n, v);
            const double p = std::exp(model.log_prob(x));
            const auto g = model.grad_log_prob(x);
            for (std::size_t k = 0; k < g.size(); ++k) {
                total[k] += p * g[k];
            }
        }
        for (double t : total) {
            CHECK(std::abs(t) < 1e-8);
        }
    }
}

TEST_CASE("sample log-probabilities match log_prob", "[made][sampling]") {
    Rng rng(1);
    const MadeModel model = test::random_made(6, 10, rng);
    Rng sampler(2);
    for (const BitSample &s : sample(model, 200, sampler)) {
        CHECK(s.log_prob == Approx(model.log_prob(s.bits)).margin(1e-12));
    }
    CHECK_THROWS_AS(sample(model, 0, sampler), Error);
}

TEST_CASE("sampling is chi-squared consistent at 1% significance", "[made][sampling][slow]") {
    Rng rng(404);
    const int n = 4;
    const MadeModel model = test::random_made(n, 12, rng, 1.0);
    constexpr int draws = 1'000'000;
    std::vector<double> counts(16, 0.0);
    Rng sampler(405);
    for (int d = 0; d < draws; ++d) {
        counts[model.sample_one(sampler).bits.value()] += 1.0;
    }
    double chi2 = 0.0;
    for (std::uint64_t v = 0; v < 16; ++v) {
        const double expected = draws * std::exp(model.log_prob(Bitstring(n, v)));
        REQUIRE(expected > 5.0);
        chi2 += (counts[v] - expected) * (counts[v] - expected) / expected;
    }
    const boost::math::chi_squared dist(15.0);
    const double critical = boost::math::quantile(boost::math::complement(dist, 0.01));
    INFO("chi2 = " << chi2 << ", critical = " << critical);
    CHECK(chi2 < critical);
}

TEST_CASE("same seed gives the same samples", "[made][sampling]") {
    Rng rng(6);
    const MadeModel model = test::random_made(5, 8, rng);
    Rng a(77);
    Rng b(77);
    const auto sa = sample(model, 50, a);
    const auto sb = sample(model, 50, b);
    for (std::size_t i = 0; i < sa.size(); ++i) {
        CHECK(sa[i].bits == sb[i].bits);
    }
}

TEST_CASE("probabilities are clamped away from 0 and 1", "[made]") {
    MadeModel model(3, 4);
    model.set_output_bias(std::vector<double>{80.0, -80.0, 0.0});
    const Eigen::VectorXd out = model.forward(Bitstring(3, 0));
    CHECK(out[0] == Approx(1.0 - made_probability_clamp));
    CHECK(out[1] == Approx(made_probability_clamp));
    CHECK(std::isfinite(model.log_prob(Bitstring(3, 2))));
}

TEST_CASE("entropy and purity estimates", "[made]") {
    const MadeModel uniform(3, 4);
    Rng rng(8);
    const auto samples = sample(uniform, 100, rng);
    const EntropyPurity ep = entropy_and_purity_estimates(samples);
    CHECK(ep.entropy == Approx(3.0 * std::log(2.0)));
    CHECK(ep.purity == Approx(1.0 / 8.0));
}

TEST_CASE("cold initialisation", "[made]") {
    Rng rng(10);
    const MadeModel model(6, 20, MadeInit::Cold, rng);
    // Output layer starts at zero so the initial distribution is uniform.
    CHECK(model.log_prob(Bitstring(6, 13)) == Approx(-6.0 * std::log(2.0)));
    CHECK(model.W1().cwiseAbs().maxCoeff() > 0.0);
    CHECK(model.W2().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("checkpoint JSON round trip", "[made][io]") {
    Rng rng(14);
    const MadeModel model = test::random_made(5, 9, rng);
    const MadeModel back = made_from_json(made_to_json(model));
    CHECK(back.n_sites() == 5);
    CHECK(back.hidden() == 9);
    CHECK(test::max_abs_diff(back.parameters(), model.parameters()) == 0.0);

    const auto path = std::filesystem::temp_directory_path() / "betavqe_test_made.json";
    save_made_checkpoint(model, path.string());
    const MadeModel loaded = load_made_checkpoint(path.string());
    CHECK(test::max_abs_diff(loaded.parameters(), model.parameters()) == 0.0);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(made_from_json("{\"format\": \"other\"}"), Error);
    CHECK_THROWS_AS(made_from_json("not json"), Error);
}
