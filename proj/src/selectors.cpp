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

#include "tornado/selectors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cinttypes>
#include <cstdio>

#include "tornado/gf2.hpp"

namespace tornado {

namespace {

std::vector<Key> sorted_unique(std::vector<Key> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::size_t count_outside(const std::vector<Key>& base, const std::vector<Key>& queries) {
    const auto b = sorted_unique(base);
    const auto q = sorted_unique(queries);
    std::size_t n = 0;
    for (Key x : b) n += !std::binary_search(q.begin(), q.end(), x);
    return n;
}

std::uint64_t high_bits(std::uint64_t hash, unsigned out_bits, unsigned s) {
    return s == 0 ? 0 : hash >> (out_bits - s);
}

std::string_view kind_name(SelectorKind k) {
    switch (k) {
        case SelectorKind::FixedSet: return "fixed-set";
        case SelectorKind::BitPrefix: return "bit-prefix";
        case SelectorKind::DyadicInterval: return "dyadic-interval";
        case SelectorKind::Bin: return "bin";
    }
    return "unknown";
}

SelectorKind parse_kind(std::string_view name) {
    for (auto k : {SelectorKind::FixedSet, SelectorKind::BitPrefix, SelectorKind::DyadicInterval,
                   SelectorKind::Bin}) {
        if (kind_name(k) == name) return k;
    }
    throw ConfigError("unknown selector kind '" + std::string(name) + "'");
}

std::string hex(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%" PRIx64, v);
    return buf;
}

std::vector<Key> keys_from_json(const nlohmann::json& j) {
    std::vector<Key> out;
    for (const auto& item : j) {
        if (item.is_string()) {
            out.push_back(std::stoull(item.get<std::string>(), nullptr, 16));
        } else {
            out.push_back(item.get<Key>());
        }
    }
    return out;
}

}  // namespace

Selector Selector::fixed_set(std::vector<Key> xs, std::vector<Key> queries) {
    Selector s;
    s.kind = SelectorKind::FixedSet;
    s.base = std::move(xs);
    s.queries = std::move(queries);
    return s;
}

Selector Selector::bit_prefix(std::vector<Key> s_set, unsigned out_bits, unsigned s,
                              std::vector<std::uint64_t> targets, std::vector<Key> queries,
                              bool relative_to_query) {
    Selector sel;
    sel.kind = SelectorKind::BitPrefix;
    sel.base = std::move(s_set);
    sel.out_bits = out_bits;
    sel.select_bits = s;
    sel.targets = sorted_unique(std::move(targets));
    sel.queries = std::move(queries);
    sel.relative_to_query = relative_to_query;
    sel.validate();
    return sel;
}

Selector Selector::dyadic_interval(std::vector<Key> s_set, Key query, unsigned out_bits,
                                   unsigned interval_bits) {
    Selector sel;
    sel.kind = SelectorKind::DyadicInterval;
    sel.base = std::move(s_set);
    sel.queries = {query};
    sel.out_bits = out_bits;
    sel.interval_bits = interval_bits;
    sel.select_bits = out_bits - interval_bits;
    sel.validate();
    return sel;
}

Selector Selector::fixed_bin(std::vector<Key> s_set, unsigned out_bits, std::uint64_t bin,
                             std::vector<Key> queries) {
    Selector sel;
    sel.kind = SelectorKind::Bin;
    sel.base = std::move(s_set);
    sel.queries = std::move(queries);
    sel.out_bits = out_bits;
    sel.select_bits = out_bits;
    sel.bin = bin;
    sel.validate();
    return sel;
}

Selector Selector::query_bin(std::vector<Key> s_set, Key query, unsigned out_bits) {
    Selector sel;
    sel.kind = SelectorKind::Bin;
    sel.base = std::move(s_set);
    sel.queries = {query};
    sel.out_bits = out_bits;
    sel.select_bits = out_bits;
    sel.relative_to_query = true;
    sel.validate();
    return sel;
}

void Selector::validate() const {
    switch (kind) {
        case SelectorKind::FixedSet:
            return;
        case SelectorKind::BitPrefix:
            if (out_bits < 1 || out_bits > 64 || select_bits > out_bits)
                throw ConfigError("bit-prefix selector needs 0 <= s <= out_bits <= 64");
            for (auto t : targets) {
                if (select_bits < 64 && t >> select_bits)
                    throw ConfigError("bit-prefix target wider than s bits");
            }
            break;
        case SelectorKind::DyadicInterval:
            if (out_bits < 1 || out_bits > 64 || interval_bits > out_bits)
                throw ConfigError("dyadic selector needs interval_bits <= out_bits <= 64");
            if (queries.size() != 1) throw ConfigError("dyadic selector needs exactly one query");
            if (select_bits != out_bits - interval_bits)
                throw ConfigError("dyadic selector select bits must be out_bits - interval_bits");
            return;
        case SelectorKind::Bin:
            if (out_bits < 1 || out_bits > 64 || select_bits != out_bits)
                throw ConfigError("bin selector reads all out_bits");
            if (!relative_to_query && out_bits < 64 && bin >> out_bits)
                throw ConfigError("bin value wider than out_bits");
            break;
    }
    if (relative_to_query && queries.size() != 1)
        throw ConfigError("query-relative selectors need exactly one query");
}

bool Selector::accepts(std::uint64_t x_select, std::span<const std::uint64_t> query_select) const {
    switch (kind) {
        case SelectorKind::FixedSet:
            return true;
        case SelectorKind::BitPrefix: {
            const std::uint64_t v = relative_to_query ? x_select ^ query_select[0] : x_select;
            return std::binary_search(targets.begin(), targets.end(), v);
        }
        case SelectorKind::DyadicInterval: {
            const std::uint64_t m = low_mask(select_bits);
            const std::uint64_t diff = (x_select - query_select[0]) & m;
            return diff == 0 || diff == 1 || diff == m;
        }
        case SelectorKind::Bin:
            return x_select == (relative_to_query ? query_select[0] : bin);
    }
    return false;
}

double mu(const Selector& sel) {
    sel.validate();
    const double q = static_cast<double>(sorted_unique(sel.queries).size());
    const auto outside = static_cast<double>(count_outside(sel.base, sel.queries));
    const double range = std::ldexp(1.0, static_cast<int>(sel.select_bits));
    switch (sel.kind) {
        case SelectorKind::FixedSet:
            return outside + q;
        case SelectorKind::BitPrefix:
            return outside * static_cast<double>(sel.targets.size()) / range + q;
        case SelectorKind::DyadicInterval:
            return outside * std::min(3.0, range) / range + q;
        case SelectorKind::Bin:
            return outside / range + q;
    }
    return 0.0;
}

std::vector<Key> select(const Selector& sel, const TornadoHash& h) {
    std::vector<Key> queries = sorted_unique(sel.queries);
    if (sel.kind == SelectorKind::FixedSet) {
        std::vector<Key> out = sel.base;
        out.insert(out.end(), queries.begin(), queries.end());
        return sorted_unique(std::move(out));
    }
    if (sel.out_bits != h.spec().out_bits)
        throw ConfigError("selector out_bits does not match the hash function");

    std::vector<std::uint64_t> query_select;
    query_select.reserve(sel.queries.size());
    for (Key q : sel.queries) query_select.push_back(high_bits(h.eval(q), sel.out_bits, sel.select_bits));

    std::vector<Key> out = queries;
    for (Key x : sel.base) {
        if (sel.accepts(high_bits(h.eval(x), sel.out_bits, sel.select_bits), query_select))
            out.push_back(x);
    }
    return sorted_unique(std::move(out));
}

bool derived_keys_independent(const TornadoHash& h, std::span<const Key> keys) {
    if (keys.size() <= 1) return true;
    const PositionLayout layout = PositionLayout::derived(h.spec());
    if (keys.size() > layout.dimension()) return false;
    GF2Basis basis(layout.dimension());
    std::vector<std::uint64_t> words((layout.dimension() + 63) / 64);
    std::array<std::uint32_t, kMaxPositions> chars;
    for (Key x : keys) {
        h.derive_into(x, chars);
        std::fill(words.begin(), words.end(), 0);
        for (unsigned p = 0; p < layout.positions(); ++p) {
            const std::size_t bit = layout.bit_index(p, chars[p]);
            words[bit >> 6] |= std::uint64_t{1} << (bit & 63);
        }
        if (!basis.insert(words)) return false;
    }
    return true;
}

bool selected_derived_independent(const Selector& sel, const TornadoHash& h) {
    const auto xs = select(sel, h);
    return derived_keys_independent(h, xs);
}

nlohmann::ordered_json to_json(const Selector& sel) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(sel.kind);
    auto hex_list = [](const std::vector<Key>& keys) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (Key k : keys) arr.push_back(hex(k));
        return arr;
    };
    j["base"] = hex_list(sel.base);
    j["queries"] = hex_list(sel.queries);
    j["out_bits"] = sel.out_bits;
    j["select_bits"] = sel.select_bits;
    j["targets"] = hex_list(sel.targets);
    j["relative_to_query"] = sel.relative_to_query;
    j["interval_bits"] = sel.interval_bits;
    j["bin"] = hex(sel.bin);
    return j;
}

Selector selector_from_json(const nlohmann::json& j) {
    Selector sel;
    sel.kind = parse_kind(j.at("kind").get<std::string>());
    sel.base = keys_from_json(j.at("base"));
    if (j.contains("queries")) sel.queries = keys_from_json(j.at("queries"));
    sel.out_bits = j.value("out_bits", 0u);
    sel.select_bits = j.value("select_bits", 0u);
    if (j.contains("targets")) sel.targets = sorted_unique(keys_from_json(j.at("targets")));
    sel.relative_to_query = j.value("relative_to_query", false);
    sel.interval_bits = j.value("interval_bits", 0u);
    if (j.contains("bin")) sel.bin = keys_from_json(nlohmann::json::array({j.at("bin")})).front();
    sel.validate();
    return sel;
}

}  // namespace tornado
