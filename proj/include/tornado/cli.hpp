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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "tornado/spec.hpp"

namespace tornado::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

/// Everything one invocation needs. Round-trips through to_json/from_json.
struct RunConfig {
    std::string subcommand;
    TornadoSpec spec{8, 2, 4, 32, Variant::Tornado, 0};
    std::uint64_t trials = 10000;
    std::uint64_t n = 256;          // keys (chaining, probing) or set size (independence, chernoff)
    std::uint64_t m = 1 << 16;      // probing table size
    double delta = 0.5;             // chernoff deviation, or dominance delta for probing
    std::vector<unsigned> k{4, 8};  // chaining thresholds
    std::uint64_t queries = 1024;
    unsigned reps = 9;
    std::string scheme = "all";     // bench
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string output;             // empty: standard output
    std::string histogram;          // probing: optional histogram CSV path
    std::string selector;           // optional selector JSON file

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::ordered_json to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

/// Parses argv-style arguments (without the program name) and runs the
/// subcommand. Returns 0, 1 (usage or config error) or 2 (bound violation).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Executes an already parsed configuration.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace tornado::cli
