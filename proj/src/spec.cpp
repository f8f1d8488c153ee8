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

#include "tornado/spec.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace tornado {

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::SimpleTabulation: return "simple-tabulation";
        case Variant::SimpleTornado: return "simple-tornado";
        case Variant::Tornado: return "tornado";
        case Variant::TornadoMix: return "tornado-mix";
    }
    return "unknown";
}

Variant parse_variant(std::string_view name) {
    for (auto v : {Variant::SimpleTabulation, Variant::SimpleTornado, Variant::Tornado,
                   Variant::TornadoMix}) {
        if (to_string(v) == name) return v;
    }
    throw ConfigError("unknown variant '" + std::string(name) + "'");
}

unsigned TornadoSpec::level_inputs(unsigned level) const {
    if (level == 0) return variant == Variant::SimpleTornado ? 0 : c - 1;
    if (variant == Variant::TornadoMix && level + 1 >= d) return c + d - 2;
    return c + level - 1;
}

void TornadoSpec::validate() const {
    if (char_bits < 1 || char_bits > kMaxCharBits)
        throw ConfigError("char_bits must be in 1..16");
    if (c < 1) throw ConfigError("c must be at least 1");
    if (char_bits * c > 64) throw ConfigError("c * char_bits must not exceed 64");
    if (out_bits < 1 || out_bits > 64) throw ConfigError("out_bits must be in 1..64");
    if (c + d > kMaxPositions) throw ConfigError("c + d must not exceed 64");
    switch (variant) {
        case Variant::SimpleTabulation:
            if (d != 0) throw ConfigError("simple tabulation requires d = 0");
            break;
        case Variant::SimpleTornado:
        case Variant::Tornado:
            break;
        case Variant::TornadoMix:
            if (d < 2) throw ConfigError("tornado-mix requires d >= 2");
            if (psi_bits < char_bits || psi_bits > kMaxPsiBits)
                throw ConfigError("tornado-mix requires char_bits <= psi_bits <= 20");
            break;
    }
}

std::string TornadoSpec::to_string() const {
    std::ostringstream os;
    os << "variant=" << tornado::to_string(variant) << ",sigma=" << char_bits << ",c=" << c
       << ",d=" << d << ",r=" << out_bits;
    if (variant == Variant::TornadoMix) os << ",psi=" << psi_bits;
    return os.str();
}

namespace {

unsigned parse_unsigned(std::string_view field, std::string_view value) {
    unsigned out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("bad value for '" + std::string(field) + "': '" + std::string(value) + "'");
    return out;
}

}  // namespace

TornadoSpec TornadoSpec::parse(std::string_view text) {
    TornadoSpec spec;
    spec.psi_bits = 0;
    bool seen_variant = false;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto item = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("spec item without '=': '" + std::string(item) + "'");
        auto name = item.substr(0, eq);
        auto value = item.substr(eq + 1);
        if (name == "variant") {
            spec.variant = parse_variant(value);
            seen_variant = true;
        } else if (name == "sigma") {
            spec.char_bits = parse_unsigned(name, value);
        } else if (name == "c") {
            spec.c = parse_unsigned(name, value);
        } else if (name == "d") {
            spec.d = parse_unsigned(name, value);
        } else if (name == "r") {
            spec.out_bits = parse_unsigned(name, value);
        } else if (name == "psi") {
            spec.psi_bits = parse_unsigned(name, value);
        } else {
            throw ConfigError("unknown spec field '" + std::string(name) + "'");
        }
    }
    if (!seen_variant) throw ConfigError("spec string must name a variant");
    spec.validate();
    return spec;
}

}  // namespace tornado
