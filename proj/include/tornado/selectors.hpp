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

// Selector functions: predicates that pick keys from a base set using only
// the key and the high-order selection bits of its hash (and those of the
// query keys). Every query key is always selected.

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "tornado/tornado_hash.hpp"

namespace tornado {

enum class SelectorKind {
    FixedSet,        // a fixed set X, independent of the hash
    BitPrefix,       // high s bits of h(x) fall in a target set
    DyadicInterval,  // h(x) lands in the dyadic interval of the query or a neighbour
    Bin,             // h(x) equals a fixed bin, or the query's bin
};

struct Selector {
    SelectorKind kind = SelectorKind::FixedSet;
    std::vector<Key> base;     // S (or X for FixedSet)
    std::vector<Key> queries;  // Q
    unsigned out_bits = 0;     // r of the hash the selector reads
    unsigned select_bits = 0;  // s; 0 for FixedSet
    std::vector<std::uint64_t> targets;  // BitPrefix target values (or xor offsets)
    bool relative_to_query = false;      // BitPrefix / Bin: compare against the query
    unsigned interval_bits = 0;          // DyadicInterval: interval length 2^l
    std::uint64_t bin = 0;               // Bin: fixed bin when not query-relative

    static Selector fixed_set(std::vector<Key> xs, std::vector<Key> queries = {});
    static Selector bit_prefix(std::vector<Key> s_set, unsigned out_bits, unsigned s,
                               std::vector<std::uint64_t> targets, std::vector<Key> queries = {},
                               bool relative_to_query = false);
    static Selector dyadic_interval(std::vector<Key> s_set, Key query, unsigned out_bits,
                                    unsigned interval_bits);
    static Selector fixed_bin(std::vector<Key> s_set, unsigned out_bits, std::uint64_t bin,
                              std::vector<Key> queries = {});
    static Selector query_bin(std::vector<Key> s_set, Key query, unsigned out_bits);

    /// Throws ConfigError for inconsistent parameters.
    void validate() const;

    /// Whether x (not a query key) is selected given the selection bits of
    /// h(x) and of the query keys.
    bool accepts(std::uint64_t x_select, std::span<const std::uint64_t> query_select) const;
};

/// Expected selected-set size under a fully random hash; p_x = 1 on Q.
double mu(const Selector& sel);

/// The selected set under h, sorted and without duplicates; always contains Q.
std::vector<Key> select(const Selector& sel, const TornadoHash& h);

/// Whether the derived keys of select(sel, h) are linearly independent.
bool selected_derived_independent(const Selector& sel, const TornadoHash& h);

/// Checks whether the derived keys of `keys` under h are linearly independent.
bool derived_keys_independent(const TornadoHash& h, std::span<const Key> keys);

nlohmann::ordered_json to_json(const Selector& sel);
Selector selector_from_json(const nlohmann::json& j);

}  // namespace tornado
