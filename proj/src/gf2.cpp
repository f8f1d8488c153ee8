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

#include "tornado/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace tornado {

PositionLayout::PositionLayout(std::vector<unsigned> bits_per_position)
    : bits_(std::move(bits_per_position)) {
    offsets_.reserve(bits_.size() + 1);
    std::size_t offset = 0;
    for (unsigned b : bits_) {
        if (b > 22) throw ConfigError("position alphabet wider than 2^22");
        offsets_.push_back(offset);
        offset += std::size_t{1} << b;
    }
    offsets_.push_back(offset);
}

PositionLayout PositionLayout::uniform(unsigned positions, unsigned char_bits) {
    return PositionLayout(std::vector<unsigned>(positions, char_bits));
}

PositionLayout PositionLayout::derived(const TornadoSpec& spec) {
    std::vector<unsigned> bits(spec.positions());
    for (unsigned p = 0; p < spec.positions(); ++p) bits[p] = spec.position_bits(p);
    return PositionLayout(std::move(bits));
}

std::size_t GenKey::popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool GenKey::empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

GenKey& GenKey::operator^=(const GenKey& other) {
    if (dim_ != other.dim_) throw std::invalid_argument("generalized key dimension mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

GenKey genkey_from_key(Key x, const PositionLayout& layout) {
    GenKey g(layout.dimension());
    unsigned shift = 0;
    for (unsigned p = 0; p < layout.positions(); ++p) {
        const unsigned b = layout.bits(p);
        const auto ch = static_cast<std::uint32_t>(shift < 64 ? (x >> shift) & ((std::uint64_t{1} << b) - 1) : 0);
        g.flip(layout.bit_index(p, ch));
        shift += b;
    }
    return g;
}

GenKey genkey_from_chars(std::span<const std::uint32_t> chars, const PositionLayout& layout) {
    if (chars.size() != layout.positions())
        throw std::invalid_argument("character count does not match layout");
    GenKey g(layout.dimension());
    for (unsigned p = 0; p < layout.positions(); ++p) g.flip(layout.bit_index(p, chars[p]));
    return g;
}

GenKey diff_key(const GenKey& x, const GenKey& y, const PositionLayout& layout, unsigned prefix) {
    if (x.dimension() != layout.dimension() || y.dimension() != layout.dimension())
        throw std::invalid_argument("generalized key dimension mismatch");
    if (prefix > layout.positions()) throw std::invalid_argument("prefix exceeds key length");
    GenKey out = x ^ y;
    for (std::size_t bit = layout.offset(prefix); bit < layout.dimension(); ++bit) {
        if (out.test(bit)) out.flip(bit);
    }
    return out;
}

bool is_zero_set(std::span<const GenKey> ys) {
    if (ys.empty()) throw std::invalid_argument("zero-set test on the empty set");
    GenKey acc(ys.front().dimension());
    for (const GenKey& y : ys) acc ^= y;
    return acc.empty();
}

std::size_t rank(std::span<const GenKey> ys) {
    if (ys.empty()) return 0;
    GF2Basis basis(ys.front().dimension());
    for (const GenKey& y : ys) basis.insert(y);
    return basis.rank();
}

bool is_linearly_independent(std::span<const GenKey> ys) {
    if (ys.empty()) return true;
    GF2Basis basis(ys.front().dimension());
    for (const GenKey& y : ys) {
        if (!basis.insert(y)) return false;
    }
    return true;
}

std::vector<std::size_t> find_zero_subset(std::span<const GenKey> ys) {
    if (ys.empty()) throw std::invalid_argument("empty set has no zero subset");
    GF2Basis basis(ys.front().dimension(), true);
    for (const GenKey& y : ys) {
        if (!basis.insert(y)) return *basis.first_dependency();
    }
    throw std::invalid_argument("set is linearly independent");
}

GF2Basis::GF2Basis(std::size_t dimension, bool track_combinations)
    : dim_(dimension),
      words_((dimension + 63) / 64),
      track_(track_combinations),
      row_of_pivot_(dimension, -1),
      scratch_(words_) {}

bool GF2Basis::insert(std::span<const std::uint64_t> words) {
    if (words.size() != words_) throw std::invalid_argument("vector dimension mismatch");
    const std::size_t index = inserted_++;
    std::copy(words.begin(), words.end(), scratch_.begin());
    if (track_) {
        scratch_combo_.assign(index / 64 + 1, 0);
        scratch_combo_[index / 64] |= std::uint64_t{1} << (index % 64);
    }

    std::size_t w = 0;
    for (;;) {
        while (w < words_ && scratch_[w] == 0) ++w;
        if (w == words_) {
            if (track_ && !witness_) {
                std::vector<std::size_t> subset;
                for (std::size_t i = 0; i < scratch_combo_.size(); ++i) {
                    for (std::uint64_t bits = scratch_combo_[i]; bits; bits &= bits - 1)
                        subset.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                }
                witness_ = std::move(subset);
            }
            return false;
        }
        const std::size_t bit = w * 64 + static_cast<std::size_t>(std::countr_zero(scratch_[w]));
        const std::int32_t row = row_of_pivot_[bit];
        if (row < 0) {
            row_of_pivot_[bit] = static_cast<std::int32_t>(pivots_.size());
            pivots_.push_back(bit);
            rows_.insert(rows_.end(), scratch_.begin(), scratch_.end());
            if (track_) combos_.push_back(scratch_combo_);
            return true;
        }
        const std::uint64_t* r = rows_.data() + static_cast<std::size_t>(row) * words_;
        for (std::size_t k = w; k < words_; ++k) scratch_[k] ^= r[k];
        if (track_) {
            const auto& combo = combos_[static_cast<std::size_t>(row)];
            for (std::size_t k = 0; k < combo.size(); ++k) scratch_combo_[k] ^= combo[k];
        }
    }
}

void GF2Basis::clear() {
    for (std::size_t bit : pivots_) row_of_pivot_[bit] = -1;
    pivots_.clear();
    rows_.clear();
    combos_.clear();
    witness_.reset();
    inserted_ = 0;
}

}  // namespace tornado
