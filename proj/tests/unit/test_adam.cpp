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
#include <limits>

#include "betavqe/adam.hpp"
#include "betavqe/error.hpp"

using namespace betavqe;
using Catch::Approx;

TEST_CASE("first Adam step moves each parameter by lr against the gradient sign", "[adam]") {
    std::vector<double> params{1.0, -2.0, 0.5};
    const std::vector<double> grads{0.3, -4.0, 1e-3};
    AdamState state(3);
    adam_step(params, grads, state, 0.1);
    // Bias correction makes m_hat / sqrt(v_hat) = sign(g) on step one
    // (up to epsilon).
    CHECK(params[0] == Approx(0.9).epsilon(1e-6));
    CHECK(params[1] == Approx(-1.9).epsilon(1e-6));
    CHECK(params[2] == Approx(0.4).epsilon(1e-4));
    CHECK(state.step == 1);
}

TEST_CASE("Adam matches a hand-rolled reference over several steps", "[adam]") {
    const AdamHyper hyper{0.8, 0.95, 1e-6};
    std::vector<double> params{0.25};
    AdamState state(1);
    double m = 0.0;
    double v = 0.0;
    double x = 0.25;
    const std::vector<double> gs{1.0, -0.5, 0.25, 2.0, -3.0};
    for (std::size_t t = 0; t < gs.size(); ++t) {
        const double g = gs[t];
        m = 0.8 * m + 0.2 * g;
        v = 0.95 * v + 0.05 * g * g;
        const double mh = m / (1.0 - std::pow(0.8, t + 1.0));
        const double vh = v / (1.0 - std::pow(0.95, t + 1.0));
        x -= 0.01 * mh / (std::sqrt(vh) + 1e-6);
        const std::vector<double> grad{g};
        adam_step(params, grad, state, 0.01, hyper);
        CHECK(params[0] == Approx(x).epsilon(1e-14));
    }
}

TEST_CASE("Adam minimises a convex quadratic", "[adam]") {
    std::vector<double> params{3.0, -4.0};
    AdamState state(2);
    for (int step = 0; step < 3000; ++step) {
        const std::vector<double> grads{2.0 * (params[0] - 1.0), 8.0 * (params[1] + 0.5)};
        adam_step(params, grads, state, 0.01);
    }
    CHECK(params[0] == Approx(1.0).margin(1e-3));
    CHECK(params[1] == Approx(-0.5).margin(1e-3));
}

TEST_CASE("Adam rejects non-finite gradients with a numerical error", "[adam]") {
    std::vector<double> params{0.0, 0.0};
    AdamState state(2);
    const std::vector<double> bad{0.0, std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS(adam_step(params, bad, state, 0.1), NumericalError);
    CHECK(params[0] == 0.0); // untouched
    CHECK(state.step == 0);
    const std::vector<double> short_grad{1.0};
    CHECK_THROWS_AS(adam_step(params, short_grad, state, 0.1), Error);
}
