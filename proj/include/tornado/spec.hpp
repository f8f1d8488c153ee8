/*
 * Copyright 2026 The Tornado Tabulation Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tornado {

using Key = std::uint64_t;

/// Raised for any invalid parameterization or unsupported request.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Variant {
    SimpleTabulation,
    SimpleTornado,  // no twist: the last input character passes through unchanged
    Tornado,
    TornadoMix,     // last two derived characters drawn from the wider alphabet
};

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);

// Upper limits that keep tables addressable and derived keys on the stack.
inline constexpr unsigned kMaxCharBits = 16;
inline constexpr unsigned kMaxPsiBits = 20;
inline constexpr unsigned kMaxPositions = 64;

/**
 * Parameterization of a tabulation hash family.
 *
 * Keys are c characters of char_bits bits each, packed into one word with
 * the first character in the least significant bits. The derived key has
 * c + d characters; for TornadoMix the last two of them are psi_bits wide.
 */
struct TornadoSpec {
    unsigned char_bits = 8;
    unsigned c = 4;
    unsigned d = 4;
    unsigned out_bits = 32;
    Variant variant = Variant::Tornado;
    unsigned psi_bits = 0;

    /// Throws ConfigError when any invariant is violated.
    void validate() const;

    std::size_t sigma_size() const { return std::size_t{1} << char_bits; }
    std::size_t psi_size() const { return std::size_t{1} << psi_bits; }
    unsigned positions() const { return c + d; }
    unsigned key_bits() const { return c * char_bits; }

    /// Width of derived position p (0-based).
    unsigned position_bits(unsigned p) const {
        if (variant == Variant::TornadoMix && p + 2 >= c + d) return psi_bits;
        return char_bits;
    }

    /// Number of leading derived characters hashed by level i.
    unsigned level_inputs(unsigned level) const;

    /// Output width of level i.
    unsigned level_out_bits(unsigned level) const {
        if (variant == Variant::TornadoMix && level + 1 >= d) return psi_bits;
        return char_bits;
    }

    /// Number of derived-character levels with tables (0 for simple tabulation).
    unsigned levels() const { return variant == Variant::SimpleTabulation ? 0 : d + 1; }

    /// Canonical one-token form, e.g. "variant=tornado,sigma=8,c=4,d=4,r=24".
    std::string to_string() const;
    static TornadoSpec parse(std::string_view text);

    friend bool operator==(const TornadoSpec&, const TornadoSpec&) = default;
};

}  // namespace tornado
