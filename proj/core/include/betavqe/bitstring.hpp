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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace betavqe {

/**
 * @brief Computational-basis label of an n-qubit register.
 *
 * Bit i of `value` is qubit i, so qubit 0 is the least-significant bit of
 * the basis-state index. The text form is written most-significant first,
 * i.e. "10" means x_1 = 1, x_0 = 0.
 */
class Bitstring {
  public:
    static constexpr int max_bits = 62;

    Bitstring() = default;
    Bitstring(int n_bits, std::uint64_t value);

    /// Parse "x_{n-1} ... x_1 x_0".
    static Bitstring from_string(std::string_view text);

    [[nodiscard]] int size() const noexcept { return n_bits_; }
    [[nodiscard]] std::uint64_t value() const noexcept { return value_; }
    [[nodiscard]] bool operator[](int qubit) const noexcept {
        return ((value_ >> qubit) & 1U) != 0U;
    }
    void set(int qubit, bool bit) noexcept {
        const std::uint64_t mask = std::uint64_t{1} << qubit;
        value_ = bit ? (value_ | mask) : (value_ & ~mask);
    }

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Bitstring &, const Bitstring &) = default;
    friend auto operator<=>(const Bitstring &, const Bitstring &) = default;

  private:
    int n_bits_ = 0;
    std::uint64_t value_ = 0;
};

} // namespace betavqe
