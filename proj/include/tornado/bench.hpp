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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tornado/folded.hpp"

namespace tornado {

/// Degree-2 polynomial hash over the Mersenne prime field 2^89 - 1.
class Poly2Mersenne {
public:
    static constexpr uint128 kPrime = (uint128{1} << 89) - 1;

    /// Coefficients drawn uniformly from [0, 2^89 - 1).
    Poly2Mersenne(std::uint64_t seed, unsigned out_bits);
    /// Explicit coefficients; each is reduced mod p.
    Poly2Mersenne(uint128 a, uint128 b, uint128 c, unsigned out_bits);

    /// (a x^2 + b x + c) mod p, without truncation.
    uint128 eval_full(std::uint64_t x) const {
        uint128 h = add_mod(mul_mod(a_, x), b_);
        return add_mod(mul_mod(h, x), c_);
    }
    std::uint64_t operator()(std::uint64_t x) const {
        return static_cast<std::uint64_t>(eval_full(x)) & mask_;
    }

    uint128 a() const { return a_; }
    uint128 b() const { return b_; }
    uint128 c() const { return c_; }

    /// v * x mod p for v < p, via shift-add reduction.
    static uint128 mul_mod(uint128 v, std::uint64_t x) {
        const uint128 m = kPrime;
        const uint128 p0 = static_cast<uint128>(static_cast<std::uint64_t>(v)) * x;
        const uint128 p1 = static_cast<uint128>(static_cast<std::uint64_t>(v >> 64)) * x;
        // p1 * 2^64 = (p1 mod 2^25) * 2^64 + (p1 >> 25) * 2^89
        uint128 r = (p0 & m) + (p0 >> 89) + ((p1 & ((uint128{1} << 25) - 1)) << 64) + (p1 >> 25);
        r = (r & m) + (r >> 89);
        return r >= m ? r - m : r;
    }
    static uint128 add_mod(uint128 u, uint128 v) {
        const uint128 r = u + v;
        return r >= kPrime ? r - kPrime : r;
    }

private:
    uint128 a_ = 0, b_ = 0, c_ = 0;
    std::uint64_t mask_;
};

inline constexpr std::string_view kBenchSchemes[] = {
    "tornado32-folded", "tornado-mix64-folded", "poly2-mersenne", "simple-tabulation"};

struct BenchResult {
    std::string scheme;
    std::size_t n_keys = 0;
    unsigned reps = 0;
    double total_ns = 0.0;  // median over reps
    double ns_per_key = 0.0;
    std::uint64_t checksum = 0;  // xor of all outputs of one pass
    bool checksum_stable = true; // every rep produced the same checksum
};

/// Hashes a pre-generated buffer of n_keys keys reps times and reports the
/// median pass. Throws ConfigError for an unknown scheme, n_keys == 0 or reps == 0.
BenchResult throughput(std::string_view scheme, std::size_t n_keys, unsigned reps,
                       std::uint64_t seed);

/// Columns scheme,n_keys,ns_per_key,checksum_hex.
void write_bench_csv(std::ostream& os, std::span<const BenchResult> results);

}  // namespace tornado
