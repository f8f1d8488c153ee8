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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "tornado/gf2.hpp"
#include "tornado/prg.hpp"
#include "tornado/tornado_hash.hpp"

using namespace tornado;

namespace {

GenKey key(Key x, const PositionLayout& layout) { return genkey_from_key(x, layout); }

// Independent iff no non-empty subset xors to zero.
bool brute_force_independent(const std::vector<GenKey>& ys) {
    const std::size_t n = ys.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        GenKey acc(ys.front().dimension());
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) acc ^= ys[i];
        if (acc.empty()) return false;
    }
    return true;
}

std::size_t brute_force_smallest_zero_subset(const std::vector<GenKey>& ys) {
    std::size_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << ys.size()); ++mask) {
        GenKey acc(ys.front().dimension());
        for (std::size_t i = 0; i < ys.size(); ++i)
            if (mask >> i & 1) acc ^= ys[i];
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (acc.empty() && (best == 0 || size < best)) best = size;
    }
    return best;
}

std::vector<GenKey> subset(const std::vector<GenKey>& ys, const std::vector<std::size_t>& idx) {
    std::vector<GenKey> out;
    for (auto i : idx) out.push_back(ys[i]);
    return out;
}

}  // namespace

TEST_SUITE("gf2") {

TEST_CASE("encoding a key sets one bit per position") {
    const auto layout = PositionLayout::uniform(2, 1);
    const GenKey g = key(0b10, layout);
    CHECK(g.test(layout.bit_index(0, 0)));
    CHECK(g.test(layout.bit_index(1, 1)));
    CHECK(g.popcount() == 2);

    const auto wide = PositionLayout::uniform(4, 8);
    SplitMix64 rng(3);
    for (int i = 0; i < 1000; ++i) CHECK(key(rng.next() & 0xffffffff, wide).popcount() == 4);
}

TEST_CASE("mixed layout of tornado-mix derived keys") {
    const auto layout = PositionLayout::derived({8, 4, 3, 32, Variant::TornadoMix, 12});
    CHECK(layout.positions() == 7);
    CHECK(layout.bits(4) == 8);
    CHECK(layout.bits(5) == 12);
    CHECK(layout.bits(6) == 12);
    CHECK(layout.dimension() == 5 * 256 + 2 * 4096);
    CHECK_THROWS_AS(PositionLayout({23}), ConfigError);
}

TEST_CASE("diff keys") {
    const auto layout = PositionLayout::uniform(2, 1);
    const GenKey k00 = key(0b00, layout), k01 = key(0b10, layout);
    CHECK(diff_key(k00, k00, layout, 2).empty());
    CHECK(diff_key(k00, k01, layout, 0).empty());
    const GenKey d = diff_key(k00, k01, layout, 2);
    CHECK(d.popcount() == 2);
    CHECK(d.test(layout.bit_index(1, 0)));
    CHECK(d.test(layout.bit_index(1, 1)));
    CHECK(diff_key(k00, k01, layout, 1).empty());

    const auto wide = PositionLayout::uniform(3, 4);
    SplitMix64 rng(8);
    for (int i = 0; i < 500; ++i) {
        const GenKey x = key(rng.next() & 0xfff, wide), y = key(rng.next() & 0xfff, wide);
        CHECK((x ^ y) == diff_key(x, y, wide, 3));
        const GenKey p = diff_key(x, y, wide, 2);
        CHECK((p.popcount() == 0 || p.popcount() == 2 || p.popcount() == 4));
    }
    CHECK_THROWS(diff_key(k00, key(0, wide), layout, 2));
}

TEST_CASE("zero sets") {
    const auto layout = PositionLayout::uniform(2, 1);
    const std::vector<GenKey> all{key(0b00, layout), key(0b01, layout), key(0b10, layout), key(0b11, layout)};
    CHECK(is_zero_set(all));
    CHECK_FALSE(is_zero_set(std::span(all).first(3)));
    CHECK_THROWS_AS(is_zero_set(std::span<const GenKey>{}), std::invalid_argument);

    const auto l8 = PositionLayout::uniform(2, 8);
    for (Key c1 = 0; c1 < 256; c1 += 17) {
        for (Key c2 = 0; c2 < 256; c2 += 13) {
            if (c1 == c2) continue;
            const std::vector<GenKey> y{key(0 | c1 << 8, l8), key(1 | c1 << 8, l8), key(0 | c2 << 8, l8),
                                        key(1 | c2 << 8, l8)};
            CHECK(is_zero_set(y));
        }
    }
}

TEST_CASE("independence and rank") {
    const auto layout = PositionLayout::uniform(2, 1);
    const std::vector<GenKey> all{key(0b00, layout), key(0b01, layout), key(0b10, layout), key(0b11, layout)};
    CHECK(is_linearly_independent(std::span(all).first(1)));
    CHECK_FALSE(is_linearly_independent(all));
    CHECK(rank(all) == 3);
    CHECK_FALSE(brute_force_independent(all));
    CHECK(is_linearly_independent(std::span<const GenKey>{}));
    CHECK(rank(std::span<const GenKey>{}) == 0);
}

TEST_CASE("rank is invariant under permutation") {
    const auto layout = PositionLayout::uniform(3, 2);
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<GenKey> ys;
        for (int i = 0; i < 8; ++i) ys.push_back(key(gen() & 0x3f, layout));
        const std::size_t r = rank(ys);
        CHECK(r <= std::min<std::size_t>(ys.size(), layout.dimension()));
        std::shuffle(ys.begin(), ys.end(), gen);
        CHECK(rank(ys) == r);
    }
}

TEST_CASE("elimination agrees with the subset oracle") {
    std::mt19937_64 gen(0xabc);
    for (int trial = 0; trial < 2000; ++trial) {
        const unsigned positions = 1 + gen() % 4;
        const unsigned bits = 1 + gen() % 2;
        const auto layout = PositionLayout::uniform(positions, bits);
        const std::size_t n = 1 + gen() % 12;
        std::vector<GenKey> ys;
        const bool generalized = gen() & 1;
        for (std::size_t i = 0; i < n; ++i) {
            GenKey g(layout.dimension());
            if (generalized) {
                for (std::size_t b = 0; b < layout.dimension(); ++b)
                    if (gen() % 3 == 0) g.flip(b);
            } else {
                g = key(gen() & low_mask(positions * bits), layout);
            }
            ys.push_back(g);
        }
        const bool oracle = brute_force_independent(ys);
        CHECK(is_linearly_independent(ys) == oracle);
        if (!oracle) {
            const auto w = find_zero_subset(ys);
            REQUIRE_FALSE(w.empty());
            CHECK(std::is_sorted(w.begin(), w.end()));
            CHECK(is_zero_set(subset(ys, w)));
        }
    }
}

TEST_CASE("zero subset witnesses") {
    const auto layout = PositionLayout::uniform(2, 1);
    const std::vector<GenKey> all{key(0b00, layout), key(0b01, layout), key(0b10, layout), key(0b11, layout)};
    CHECK(find_zero_subset(all) == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(brute_force_smallest_zero_subset(all) == 4);

    const auto l4 = PositionLayout::uniform(3, 4);
    std::vector<GenKey> ys{key(0x123, l4), key(0x456, l4), key(0x789, l4)};
    REQUIRE(is_linearly_independent(ys));
    CHECK_THROWS_AS(find_zero_subset(ys), std::invalid_argument);
    ys.push_back(ys[0] ^ ys[2]);
    const auto w = find_zero_subset(ys);
    CHECK(w == std::vector<std::size_t>{0, 2, 3});
    CHECK(is_zero_set(subset(ys, w)));
}

TEST_CASE("basis tracks the first dependency") {
    const auto layout = PositionLayout::uniform(2, 2);
    GF2Basis basis(layout.dimension(), true);
    CHECK(basis.insert(key(0x0, layout)));
    CHECK(basis.insert(key(0x1, layout)));
    CHECK(basis.insert(key(0x4, layout)));
    CHECK_FALSE(basis.first_dependency().has_value());
    CHECK_FALSE(basis.insert(key(0x5, layout)));
    CHECK(basis.rank() == 3);
    CHECK(basis.inserted() == 4);
    REQUIRE(basis.first_dependency().has_value());
    CHECK(*basis.first_dependency() == std::vector<std::size_t>{0, 1, 2, 3});
    basis.clear();
    CHECK(basis.rank() == 0);
    CHECK(basis.inserted() == 0);
    CHECK(basis.insert(key(0x5, layout)));
}

TEST_CASE("basis handles dimensions spanning many words") {
    const auto layout = PositionLayout::uniform(6, 8);
    GF2Basis basis(layout.dimension());
    SplitMix64 rng(21);
    std::vector<GenKey> ys;
    for (int i = 0; i < 200; ++i) ys.push_back(key(rng.next() & low_mask(48), layout));
    for (const auto& y : ys) basis.insert(y);
    CHECK(basis.rank() == rank(ys));
    CHECK(basis.rank() == 200);
}

TEST_CASE("derived keys of distinct inputs are pairwise independent") {
    const TornadoSpec spec{4, 2, 2, 8, Variant::Tornado, 0};
    const auto h = TornadoHash::build(spec, 4);
    const auto layout = PositionLayout::derived(spec);
    for (Key x = 0; x < 256; x += 3) {
        for (Key y = x + 1; y < 256; y += 7) {
            const std::vector<GenKey> pair{genkey_from_chars(h.derive(x), layout),
                                           genkey_from_chars(h.derive(y), layout)};
            CHECK(is_linearly_independent(pair));
        }
    }
}

}  // TEST_SUITE
