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

// Fast evaluation paths that fold every lookup for one character into a
// single wide table word. Each word packs, low to high, the contributions
// to the derived characters still to be consumed followed by the output
// bits; evaluation alternates "consume low character, shift, xor".

#include <cstdint>
#include <optional>
#include <vector>

#include "tornado/tornado_hash.hpp"

namespace tornado {

__extension__ typedef unsigned __int128 uint128;

enum class FoldedProfile {
    Word64,   // 8-bit characters, tornado or simple tornado, (d+1)*8 + r <= 64
    Word128,  // tornado-mix with 8-bit characters and two 16-bit tail characters
};

std::optional<FoldedProfile> folded_profile(const TornadoSpec& spec);

class FoldedTables {
public:
    FoldedProfile profile() const { return profile_; }
    unsigned char_tables() const { return c_ + d_; }

    std::uint64_t eval(Key x) const {
        return profile_ == FoldedProfile::Word64 ? eval64(x) : eval128(x);
    }

    std::uint64_t eval64(Key x) const {
        const std::uint64_t* t = w64_.data();
        std::uint64_t h = 0;
        unsigned i = 0;
        for (; i + 1 < c_; ++i) {
            h ^= t[(i << 8) | (x & 0xff)];
            x >>= 8;
        }
        h ^= x;
        for (; i < c_ + d_; ++i) {
            const unsigned a = static_cast<unsigned>(h & 0xff);
            h >>= 8;
            h ^= t[(i << 8) | a];
        }
        return h;
    }

    std::uint64_t eval128(Key x) const {
        const uint128* t = w128_.data();
        uint128 h = 0;
        unsigned i = 0;
        for (; i + 1 < c_; ++i) {
            h ^= t[(i << 8) | (x & 0xff)];
            x >>= 8;
        }
        h ^= x;
        for (; i + 2 < c_ + d_; ++i) {
            const unsigned a = static_cast<unsigned>(h & 0xff);
            h >>= 8;
            h ^= t[(i << 8) | a];
        }
        const unsigned b1 = static_cast<unsigned>(h & 0xffff);
        h >>= 16;
        const unsigned b2 = static_cast<unsigned>(h & 0xffff);
        h >>= 16;
        h ^= tail_[b1] ^ tail_[(1u << 16) | b2];
        return static_cast<std::uint64_t>(h);
    }

private:
    friend FoldedTables fold_tables(const TornadoHash& h);

    FoldedProfile profile_ = FoldedProfile::Word64;
    unsigned c_ = 0;
    unsigned d_ = 0;
    std::vector<std::uint64_t> w64_;
    std::vector<uint128> w128_;
    std::vector<std::uint64_t> tail_;
};

/// Packs the logical tables of h. Throws ConfigError for unsupported specs.
FoldedTables fold_tables(const TornadoHash& h);

inline std::uint64_t eval_folded(const FoldedTables& f, Key x) { return f.eval(x); }

}  // namespace tornado
