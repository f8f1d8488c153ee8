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

// Counter-mode table randomness. Every logical table entry is a pure
// function of (seed, table id, slot), so table contents do not depend on
// fill order and can be reproduced by any implementation.

#include <cstdint>

namespace tornado {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
inline constexpr std::uint64_t kTableSalt = 0x6a09e667f3bcc909ULL;
inline constexpr std::uint64_t kTrialSalt = 0xbb67ae8584caa73bULL;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

enum class TableKind : std::uint64_t { Level = 0, Top = 1 };

/// Packs (kind, level, position, field) into one identifier.
constexpr std::uint64_t table_id(TableKind kind, std::uint64_t level, std::uint64_t position,
                                 std::uint64_t field = 0) {
    return (static_cast<std::uint64_t>(kind) << 48) | (level << 32) | (position << 16) | field;
}

constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t id) {
    return mix64(seed ^ mix64(id * kGolden + kTableSalt));
}

/// Entry `slot` of the stream identified by `stream`.
constexpr std::uint64_t draw(std::uint64_t stream, std::uint64_t slot) {
    return mix64(stream + (slot + 1) * kGolden);
}

/// Hash seed for trial t of an experiment.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t t) {
    return mix64(master ^ mix64(t + kTrialSalt));
}

constexpr std::uint64_t low_mask(unsigned bits) {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

/// Sequential generator for key sets and other experiment inputs.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform value in [0, bound), bound > 0. Rejection keeps it exact.
    constexpr std::uint64_t below(std::uint64_t bound) {
        if ((bound & (bound - 1)) == 0) return next() & (bound - 1);
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

    /// Uniform double in [0, 1).
    constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace tornado
