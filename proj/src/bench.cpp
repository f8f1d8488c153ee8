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

#include "tornado/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <functional>
#include <memory>
#include <ostream>

#include "tornado/prg.hpp"

namespace tornado {

namespace {

uint128 draw_coefficient(SplitMix64& rng) {
    for (;;) {
        const uint128 v = (static_cast<uint128>(rng.next() & low_mask(25)) << 64) | rng.next();
        if (v < Poly2Mersenne::kPrime) return v;
    }
}

uint128 reduce(uint128 v) {
    v = (v & Poly2Mersenne::kPrime) + (v >> 89);
    v = (v & Poly2Mersenne::kPrime) + (v >> 89);
    return v >= Poly2Mersenne::kPrime ? v - Poly2Mersenne::kPrime : v;
}

template <class Hash>
std::uint64_t hash_pass(const Hash& h, const std::vector<Key>& keys) {
    std::uint64_t acc = 0;
    for (Key x : keys) acc ^= h(x);
    return acc;
}

}  // namespace

Poly2Mersenne::Poly2Mersenne(std::uint64_t seed, unsigned out_bits) : mask_(low_mask(out_bits)) {
    SplitMix64 rng(mix64(seed ^ kTableSalt));
    a_ = draw_coefficient(rng);
    b_ = draw_coefficient(rng);
    c_ = draw_coefficient(rng);
}

Poly2Mersenne::Poly2Mersenne(uint128 a, uint128 b, uint128 c, unsigned out_bits)
    : a_(reduce(a)), b_(reduce(b)), c_(reduce(c)), mask_(low_mask(out_bits)) {}

BenchResult throughput(std::string_view scheme, std::size_t n_keys, unsigned reps, std::uint64_t seed) {
    if (n_keys == 0) throw ConfigError("n_keys must be positive");
    if (reps == 0) throw ConfigError("reps must be positive");

    unsigned key_bits = 32;
    std::function<std::uint64_t(const std::vector<Key>&)> pass;
    if (scheme == "tornado32-folded") {
        const auto f = std::make_shared<FoldedTables>(
            fold_tables(TornadoHash::build({8, 4, 3, 32, Variant::Tornado, 0}, seed)));
        pass = [f](const std::vector<Key>& keys) {
            return hash_pass([&](Key x) { return f->eval64(x); }, keys);
        };
    } else if (scheme == "tornado-mix64-folded") {
        key_bits = 64;
        const auto f = std::make_shared<FoldedTables>(
            fold_tables(TornadoHash::build({8, 8, 5, 64, Variant::TornadoMix, 16}, seed)));
        pass = [f](const std::vector<Key>& keys) {
            return hash_pass([&](Key x) { return f->eval128(x); }, keys);
        };
    } else if (scheme == "poly2-mersenne") {
        const Poly2Mersenne p(seed, 32);
        pass = [p](const std::vector<Key>& keys) { return hash_pass(p, keys); };
    } else if (scheme == "simple-tabulation") {
        const auto h = std::make_shared<TornadoHash>(
            TornadoHash::build({8, 4, 0, 32, Variant::SimpleTabulation, 0}, seed));
        pass = [h](const std::vector<Key>& keys) { return hash_pass(*h, keys); };
    } else {
        throw ConfigError("unknown bench scheme: " + std::string(scheme));
    }

    std::vector<Key> keys(n_keys);
    SplitMix64 rng(mix64(seed ^ kTrialSalt));
    for (auto& k : keys) k = rng.next() & low_mask(key_bits);

    BenchResult res;
    res.scheme = std::string(scheme);
    res.n_keys = n_keys;
    res.reps = reps;
    std::vector<double> times;
    for (unsigned r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::uint64_t sum = pass(keys);
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
        if (r == 0) res.checksum = sum;
        else if (sum != res.checksum) res.checksum_stable = false;
    }
    std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
    res.total_ns = std::max(times[times.size() / 2], 1.0);
    res.ns_per_key = res.total_ns / static_cast<double>(n_keys);
    return res;
}

void write_bench_csv(std::ostream& os, std::span<const BenchResult> results) {
    os << "scheme,n_keys,ns_per_key,checksum_hex\n";
    char buf[32];
    for (const auto& r : results) {
        std::snprintf(buf, sizeof buf, "%.4f,0x%016" PRIx64, r.ns_per_key, r.checksum);
        os << r.scheme << ',' << r.n_keys << ',' << buf << '\n';
    }
}

}  // namespace tornado
