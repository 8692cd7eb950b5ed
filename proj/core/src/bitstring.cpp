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

#include "betavqe/bitstring.hpp"

#include "betavqe/error.hpp"

namespace betavqe {

Bitstring::Bitstring(int n_bits, std::uint64_t value)
    : n_bits_(n_bits), value_(value) {
    BETAVQE_ABORT_IF(n_bits < 0 || n_bits > max_bits,
                     "bitstring length out of range");
    BETAVQE_ABORT_IF(n_bits < 64 && (value >> n_bits) != 0,
                     "bitstring value has bits beyond its length");
}

Bitstring Bitstring::from_string(std::string_view text) {
    BETAVQE_ABORT_IF(text.size() > static_cast<std::size_t>(max_bits),
                     "bitstring too long");
    const int n = static_cast<int>(text.size());
    std::uint64_t value = 0;
    for (int pos = 0; pos < n; ++pos) {
        const char c = text[pos];
        BETAVQE_ABORT_IF(c != '0' && c != '1', "bitstring must contain 0/1");
        if (c == '1') {
            value |= std::uint64_t{1} << (n - 1 - pos);
        }
    }
    return Bitstring(n, value);
}

std::string Bitstring::to_string() const {
    std::string out(static_cast<std::size_t>(n_bits_), '0');
    for (int q = 0; q < n_bits_; ++q) {
        if ((*this)[q]) {
            out[static_cast<std::size_t>(n_bits_ - 1 - q)] = '1';
        }
    }
    return out;
}

} // namespace betavqe
