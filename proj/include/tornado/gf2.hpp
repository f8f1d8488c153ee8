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

// Generalized keys as vectors over GF(2) indexed by position characters,
// with rank, independence and zero-set witnesses.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tornado/spec.hpp"

namespace tornado {

/// Maps a position character (position, character) to a bit index. Layout
/// is position-major; positions may have different alphabet widths.
class PositionLayout {
public:
    explicit PositionLayout(std::vector<unsigned> bits_per_position);

    static PositionLayout uniform(unsigned positions, unsigned char_bits);
    /// Layout of derived keys of `spec` (wider tail for tornado-mix).
    static PositionLayout derived(const TornadoSpec& spec);

    unsigned positions() const { return static_cast<unsigned>(bits_.size()); }
    unsigned bits(unsigned position) const { return bits_[position]; }
    std::size_t offset(unsigned position) const { return offsets_[position]; }
    std::size_t dimension() const { return offsets_.back(); }
    std::size_t bit_index(unsigned position, std::uint32_t ch) const { return offsets_[position] + ch; }

    friend bool operator==(const PositionLayout&, const PositionLayout&) = default;

private:
    std::vector<unsigned> bits_;
    std::vector<std::size_t> offsets_;  // positions() + 1 entries
};

/// A set of position characters, stored as a bit vector.
class GenKey {
public:
    GenKey() = default;
    explicit GenKey(std::size_t dimension) : dim_(dimension), words_((dimension + 63) / 64) {}

    std::size_t dimension() const { return dim_; }
    std::span<const std::uint64_t> words() const { return words_; }

    bool test(std::size_t bit) const { return (words_[bit >> 6] >> (bit & 63)) & 1; }
    void flip(std::size_t bit) { words_[bit >> 6] ^= std::uint64_t{1} << (bit & 63); }
    std::size_t popcount() const;
    bool empty() const;

    GenKey& operator^=(const GenKey& other);
    friend GenKey operator^(GenKey a, const GenKey& b) { return a ^= b; }
    friend bool operator==(const GenKey&, const GenKey&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Key with `layout.positions()` characters, first character in the low bits.
GenKey genkey_from_key(Key x, const PositionLayout& layout);
GenKey genkey_from_chars(std::span<const std::uint32_t> chars, const PositionLayout& layout);

/// Symmetric difference of x and y restricted to the first `prefix` positions.
GenKey diff_key(const GenKey& x, const GenKey& y, const PositionLayout& layout, unsigned prefix);

/// True iff every position character occurs an even number of times in ys.
/// Throws std::invalid_argument for an empty set.
bool is_zero_set(std::span<const GenKey> ys);

std::size_t rank(std::span<const GenKey> ys);
/// The empty set is independent.
bool is_linearly_independent(std::span<const GenKey> ys);

/// Indices (ascending) of a zero subset: the first vector that reduces to
/// zero together with the vectors it was reduced by. Throws
/// std::invalid_argument if ys is independent.
std::vector<std::size_t> find_zero_subset(std::span<const GenKey> ys);

/**
 * Incremental echelon basis. Each row's pivot is its lowest set bit and the
 * row has no bits below it, so reduction only touches words at or above the
 * pivot. With tracking enabled every row remembers which inserted vectors
 * it is the sum of, which yields zero-set witnesses.
 */
class GF2Basis {
public:
    explicit GF2Basis(std::size_t dimension, bool track_combinations = false);

    /// Inserts the next vector. Returns false if it depends on earlier ones.
    bool insert(std::span<const std::uint64_t> words);
    bool insert(const GenKey& key) { return insert(key.words()); }

    std::size_t rank() const { return pivots_.size(); }
    std::size_t inserted() const { return inserted_; }
    std::size_t dimension() const { return dim_; }

    /// Witness for the first dependent insertion, if tracking was enabled.
    const std::optional<std::vector<std::size_t>>& first_dependency() const { return witness_; }

    void clear();

private:
    std::size_t dim_;
    std::size_t words_;
    bool track_;
    std::size_t inserted_ = 0;
    std::vector<std::uint64_t> rows_;          // rank() rows of words_ each
    std::vector<std::size_t> pivots_;          // pivot bit of each row
    std::vector<std::int32_t> row_of_pivot_;   // bit -> row, -1 if none
    std::vector<std::vector<std::uint64_t>> combos_;  // per row, bitset over insertions
    std::vector<std::uint64_t> scratch_;
    std::vector<std::uint64_t> scratch_combo_;
    std::optional<std::vector<std::size_t>> witness_;
};

}  // namespace tornado
