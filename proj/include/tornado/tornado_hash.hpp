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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tornado/prg.hpp"
#include "tornado/spec.hpp"

namespace tornado {

/// Characters x~_1 .. x~_{c+d}; index 0 holds x~_1.
using DerivedKey = std::vector<std::uint32_t>;

/// Describes one logical lookup table inside a TornadoHash.
struct TableInfo {
    TableKind kind;
    unsigned level;     // 0..d for level tables, 0 for the top table
    unsigned position;  // 0-based input position
    unsigned in_bits;
    unsigned out_bits;
    std::size_t offset;  // first entry in the canonical flat array

    std::size_t size() const { return std::size_t{1} << in_bits; }
};

/**
 * An instantiated tabulation hash function.
 *
 * Level i (0..d) is a simple tabulation function over the first
 * spec.level_inputs(i) derived characters; it produces derived character
 * c + i (level 0 twists character c). The top table is a simple tabulation
 * function over all c + d derived characters into out_bits bits.
 *
 * All tables live in one flat array in canonical order: levels ascending,
 * positions ascending, characters ascending, then the top table by
 * position. That order is also the table dump order.
 *
 * Immutable after construction and safe to share between threads.
 */
class TornadoHash {
public:
    /// Fills every table from the counter-mode PRG. Throws ConfigError.
    static TornadoHash build(const TornadoSpec& spec, std::uint64_t seed);

    /// Uses caller-provided entries in canonical order. Every entry must fit
    /// the width of its table.
    static TornadoHash from_tables(const TornadoSpec& spec, std::uint64_t seed,
                                   std::vector<std::uint64_t> entries);

    const TornadoSpec& spec() const { return spec_; }
    std::uint64_t seed() const { return seed_; }
    std::span<const TableInfo> tables() const { return tables_; }
    std::span<const std::uint64_t> entries() const { return entries_; }

    std::uint64_t level_entry(unsigned level, unsigned position, std::uint32_t ch) const {
        return entries_[level_offset_[level] + (std::size_t{position} << spec_.char_bits) + ch];
    }
    std::uint64_t top_entry(unsigned position, std::uint32_t ch) const {
        return entries_[top_offset_[position] + ch];
    }

    /// Writes c + d derived characters into out (out.size() >= c + d).
    void derive_into(Key x, std::span<std::uint32_t> out) const;
    DerivedKey derive(Key x) const;

    std::uint64_t eval(Key x) const;
    std::uint64_t operator()(Key x) const { return eval(x); }

    /// True iff distinct keys in `keys` have distinct derived keys.
    bool derived_injective(std::span<const Key> keys) const;

    /// Header line plus one lowercase hex word per entry, canonical order.
    void dump(std::ostream& os) const;
    static TornadoHash load_dump(std::istream& is);

private:
    TornadoHash(const TornadoSpec& spec, std::uint64_t seed);

    TornadoSpec spec_;
    std::uint64_t seed_ = 0;
    std::vector<TableInfo> tables_;
    std::vector<std::uint64_t> entries_;
    std::vector<std::size_t> level_offset_;
    std::vector<unsigned> level_inputs_;
    std::vector<std::size_t> top_offset_;
};

/// High s bits of h(x). Throws ConfigError unless s + t == out_bits.
std::uint64_t hash_select_bits(const TornadoHash& h, Key x, unsigned s, unsigned t);
/// Low t bits of h(x). Throws ConfigError unless s + t == out_bits.
std::uint64_t hash_free_bits(const TornadoHash& h, Key x, unsigned s, unsigned t);

bool derived_injectivity_check(const TornadoHash& h, std::span<const Key> keys);

std::string dump_header(const TornadoSpec& spec, std::uint64_t seed);

}  // namespace tornado
