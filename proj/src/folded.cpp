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

#include "tornado/folded.hpp"

namespace tornado {

namespace {

// Bits taken in the accumulator by derived positions [from, c + d) plus output.
unsigned packed_width(const TornadoSpec& spec, unsigned from) {
    unsigned w = spec.out_bits;
    for (unsigned q = from; q < spec.positions(); ++q) w += spec.position_bits(q);
    return w;
}

// Folded word for input position j and character a. The accumulator is
// aligned so that bit 0 is the first derived position not yet consumed
// when this word is xored in.
uint128 fold_entry(const TornadoHash& h, unsigned j, std::uint32_t a) {
    const TornadoSpec& spec = h.spec();
    const unsigned base = j + 1 < spec.c ? spec.c - 1 : j + 1;
    uint128 word = 0;
    unsigned offset = 0;
    for (unsigned q = base; q < spec.positions(); ++q) {
        const unsigned level = q - (spec.c - 1);
        if (j < spec.level_inputs(level)) word |= uint128{h.level_entry(level, j, a)} << offset;
        offset += spec.position_bits(q);
    }
    word |= uint128{h.top_entry(j, a)} << offset;
    return word;
}

}  // namespace

std::optional<FoldedProfile> folded_profile(const TornadoSpec& spec) {
    if (spec.char_bits != 8) return std::nullopt;
    switch (spec.variant) {
        case Variant::Tornado:
        case Variant::SimpleTornado:
            if (packed_width(spec, spec.c - 1) <= 64) return FoldedProfile::Word64;
            return std::nullopt;
        case Variant::TornadoMix:
            if (spec.psi_bits == 16 && packed_width(spec, spec.c - 1) <= 128)
                return FoldedProfile::Word128;
            return std::nullopt;
        case Variant::SimpleTabulation:
            return std::nullopt;
    }
    return std::nullopt;
}

FoldedTables fold_tables(const TornadoHash& h) {
    const TornadoSpec& spec = h.spec();
    const auto profile = folded_profile(spec);
    if (!profile) throw ConfigError("no folded profile for " + spec.to_string());

    FoldedTables f;
    f.profile_ = *profile;
    f.c_ = spec.c;
    f.d_ = spec.d;
    if (*profile == FoldedProfile::Word64) {
        f.w64_.resize(std::size_t{spec.positions()} << 8);
        for (unsigned j = 0; j < spec.positions(); ++j)
            for (std::uint32_t a = 0; a < 256; ++a)
                f.w64_[(j << 8) | a] = static_cast<std::uint64_t>(fold_entry(h, j, a));
    } else {
        const unsigned narrow = spec.positions() - 2;
        f.w128_.resize(std::size_t{narrow} << 8);
        for (unsigned j = 0; j < narrow; ++j)
            for (std::uint32_t a = 0; a < 256; ++a) f.w128_[(j << 8) | a] = fold_entry(h, j, a);
        f.tail_.resize(std::size_t{2} << 16);
        for (unsigned k = 0; k < 2; ++k)
            for (std::uint32_t b = 0; b < (1u << 16); ++b)
                f.tail_[(k << 16) | b] = h.top_entry(narrow + k, b);
    }
    return f;
}

}  // namespace tornado
