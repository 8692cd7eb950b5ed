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

#include <stdexcept>
#include <string>

namespace betavqe {

/// Raised on contract violations: bad sizes, invalid indices, malformed input.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when training produces a non-finite loss or gradient.
class NumericalError : public Error {
  public:
    using Error::Error;
};

[[noreturn]] void abort_with(const char *message, const char *file, int line,
                             const char *function);

} // namespace betavqe

#define BETAVQE_ABORT(message)                                                 \
    ::betavqe::abort_with((message), __FILE__, __LINE__, __func__)

#define BETAVQE_ABORT_IF(condition, message)                                   \
    do {                                                                       \
        if (condition) {                                                       \
            BETAVQE_ABORT(message);                                            \
        }                                                                      \
    } while (false)

#define BETAVQE_ABORT_IF_NOT(condition, message)                               \
    BETAVQE_ABORT_IF(!(condition), message)
