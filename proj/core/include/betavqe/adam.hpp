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

#include <cstddef>
#include <span>
#include <vector>

namespace betavqe {

struct AdamHyper {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// Moment estimates for one parameter group.
struct AdamState {
    AdamState() = default;
    explicit AdamState(std::size_t n) : first(n, 0.0), second(n, 0.0) {}

    std::vector<double> first;
    std::vector<double> second;
    long step = 0;
};

/**
 * @brief One bias-corrected Adam update, in place.
 *
 * Throws NumericalError naming the offending index if a gradient entry is
 * NaN or infinite; parameters and state are left untouched in that case.
 */
void adam_step(std::span<double> params, std::span<const double> grads,
               AdamState &state, double lr, const AdamHyper &hyper = {});

} // namespace betavqe
