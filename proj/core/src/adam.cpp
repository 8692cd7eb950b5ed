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

#include "betavqe/adam.hpp"

#include <cmath>
#include <string>

#include "betavqe/error.hpp"

namespace betavqe {

void adam_step(std::span<double> params, std::span<const double> grads,
               AdamState &state, double lr, const AdamHyper &hyper) {
    BETAVQE_ABORT_IF(params.size() != grads.size(),
                     "parameter and gradient lengths differ");
    BETAVQE_ABORT_IF(state.first.size() != params.size() ||
                         state.second.size() != params.size(),
                     "Adam state does not match the parameter count");
    for (std::size_t i = 0; i < grads.size(); ++i) {
        if (!std::isfinite(grads[i])) {
            throw NumericalError("non-finite gradient at index " +
                                 std::to_string(i) + " (value " +
                                 std::to_string(grads[i]) + ") at Adam step " +
                                 std::to_string(state.step + 1));
        }
    }
    ++state.step;
    const double correction1 = 1.0 - std::pow(hyper.beta1, static_cast<double>(state.step));
    const double correction2 = 1.0 - std::pow(hyper.beta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        double &m = state.first[i];
        double &v = state.second[i];
        m = hyper.beta1 * m + (1.0 - hyper.beta1) * g;
        v = hyper.beta2 * v + (1.0 - hyper.beta2) * g * g;
        const double m_hat = m / correction1;
        const double v_hat = v / correction2;
        params[i] -= lr * m_hat / (std::sqrt(v_hat) + hyper.epsilon);
    }
}

} // namespace betavqe
