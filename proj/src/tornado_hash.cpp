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

#include "tornado/tornado_hash.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace tornado {

TornadoHash::TornadoHash(const TornadoSpec& spec, std::uint64_t seed) : spec_(spec), seed_(seed) {
    spec_.validate();
    std::size_t offset = 0;
    const unsigned levels = spec_.levels();
    level_offset_.resize(levels);
    level_inputs_.resize(levels);
    for (unsigned level = 0; level < levels; ++level) {
        level_offset_[level] = offset;
        level_inputs_[level] = spec_.level_inputs(level);
        for (unsigned pos = 0; pos < level_inputs_[level]; ++pos) {
            TableInfo t{TableKind::Level, level, pos, spec_.char_bits, spec_.level_out_bits(level),
                        offset};
            offset += t.size();
            tables_.push_back(t);
        }
    }
    top_offset_.resize(spec_.positions());
    for (unsigned pos = 0; pos < spec_.positions(); ++pos) {
        TableInfo t{TableKind::Top, 0, pos, spec_.position_bits(pos), spec_.out_bits, offset};
        top_offset_[pos] = offset;
        offset += t.size();
        tables_.push_back(t);
    }
    entries_.resize(offset);
}

TornadoHash TornadoHash::build(const TornadoSpec& spec, std::uint64_t seed) {
    TornadoHash h(spec, seed);
    for (const TableInfo& t : h.tables_) {
        const std::uint64_t stream = stream_key(seed, table_id(t.kind, t.level, t.position));
        const std::uint64_t mask = low_mask(t.out_bits);
        std::uint64_t* out = h.entries_.data() + t.offset;
        const std::size_t n = t.size();
        for (std::size_t slot = 0; slot < n; ++slot) out[slot] = draw(stream, slot) & mask;
    }
    return h;
}

TornadoHash TornadoHash::from_tables(const TornadoSpec& spec, std::uint64_t seed,
                                     std::vector<std::uint64_t> entries) {
    TornadoHash h(spec, seed);
    if (entries.size() != h.entries_.size())
        throw ConfigError("expected " + std::to_string(h.entries_.size()) + " table entries, got " +
                          std::to_string(entries.size()));
    for (const TableInfo& t : h.tables_) {
        const std::uint64_t mask = low_mask(t.out_bits);
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (entries[t.offset + i] & ~mask) throw ConfigError("table entry exceeds its bit width");
        }
    }
    h.entries_ = std::move(entries);
    return h;
}

void TornadoHash::derive_into(Key x, std::span<std::uint32_t> out) const {
    const unsigned c = spec_.c;
    const unsigned cb = spec_.char_bits;
    const std::uint64_t mask = low_mask(cb);
    for (unsigned j = 0; j < c; ++j) out[j] = static_cast<std::uint32_t>((x >> (j * cb)) & mask);

    const std::uint64_t* e = entries_.data();
    const unsigned levels = static_cast<unsigned>(level_offset_.size());
    for (unsigned level = 0; level < levels; ++level) {
        const std::uint64_t* t = e + level_offset_[level];
        std::uint64_t acc = 0;
        for (unsigned j = 0; j < level_inputs_[level]; ++j, t += std::size_t{1} << cb) acc ^= t[out[j]];
        if (level == 0) {
            out[c - 1] ^= static_cast<std::uint32_t>(acc);
        } else {
            out[c - 1 + level] = static_cast<std::uint32_t>(acc);
        }
    }
}

DerivedKey TornadoHash::derive(Key x) const {
    DerivedKey out(spec_.positions());
    derive_into(x, out);
    return out;
}

std::uint64_t TornadoHash::eval(Key x) const {
    std::array<std::uint32_t, kMaxPositions> chars;
    derive_into(x, chars);
    std::uint64_t h = 0;
    const std::uint64_t* e = entries_.data();
    for (unsigned p = 0; p < spec_.positions(); ++p) h ^= e[top_offset_[p] + chars[p]];
    return h;
}

bool TornadoHash::derived_injective(std::span<const Key> keys) const {
    // The whole derived key is a function of its first c characters, which
    // pack into one word, so comparing packed prefixes suffices.
    std::vector<std::uint64_t> packed;
    packed.reserve(keys.size());
    std::array<std::uint32_t, kMaxPositions> chars;
    for (Key x : keys) {
        derive_into(x, chars);
        std::uint64_t p = 0;
        for (unsigned j = 0; j < spec_.c; ++j) p |= std::uint64_t{chars[j]} << (j * spec_.char_bits);
        packed.push_back(p);
    }
    std::sort(packed.begin(), packed.end());
    return std::adjacent_find(packed.begin(), packed.end()) == packed.end();
}

std::string dump_header(const TornadoSpec& spec, std::uint64_t seed) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%" PRIx64, seed);
    return "tornado-tables v1 " + spec.to_string() + " seed=0x" + buf;
}

void TornadoHash::dump(std::ostream& os) const {
    os << dump_header(spec_, seed_) << '\n';
    char buf[32];
    for (std::uint64_t v : entries_) {
        std::snprintf(buf, sizeof buf, "%" PRIx64 "\n", v);
        os << buf;
    }
}

TornadoHash TornadoHash::load_dump(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("empty table dump");
    std::istringstream header(line);
    std::string magic, version, spec_text, seed_text;
    header >> magic >> version >> spec_text >> seed_text;
    if (magic != "tornado-tables" || version != "v1" || seed_text.rfind("seed=0x", 0) != 0)
        throw ConfigError("bad table dump header: '" + line + "'");
    const TornadoSpec spec = TornadoSpec::parse(spec_text);
    const std::uint64_t seed = std::stoull(seed_text.substr(7), nullptr, 16);
    std::vector<std::uint64_t> entries;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        entries.push_back(std::stoull(line, nullptr, 16));
    }
    return from_tables(spec, seed, std::move(entries));
}

namespace {

void check_split(const TornadoHash& h, unsigned s, unsigned t) {
    if (s + t != h.spec().out_bits)
        throw ConfigError("select bits + free bits must equal out_bits");
}

}  // namespace

std::uint64_t hash_select_bits(const TornadoHash& h, Key x, unsigned s, unsigned t) {
    check_split(h, s, t);
    if (s == 0) return 0;
    return h.eval(x) >> t;
}

std::uint64_t hash_free_bits(const TornadoHash& h, Key x, unsigned s, unsigned t) {
    check_split(h, s, t);
    return h.eval(x) & low_mask(t);
}

bool derived_injectivity_check(const TornadoHash& h, std::span<const Key> keys) {
    return h.derived_injective(keys);
}

}  // namespace tornado
