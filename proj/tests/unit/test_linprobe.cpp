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
#include <cmath>
#include <random>
#include <sstream>

#include "tornado/bounds.hpp"
#include "tornado/linprobe.hpp"
#include "tornado/prg.hpp"

using namespace tornado;

TEST_SUITE("linprobe") {

TEST_CASE("insertion and lookup basics") {
    ProbeTable t(16);
    CHECK(t.insert(100, 5) == 1);
    CHECK(t.cell(5) == Key{100});
    CHECK(t.insert(200, 5) == 2);
    CHECK(t.cell(6) == Key{200});
    CHECK(t.lookup(200, 5).found);
    CHECK(t.lookup(200, 5).probes == 2);
    const auto miss = t.lookup(300, 5);
    CHECK_FALSE(miss.found);
    CHECK(miss.probes == 3);
    CHECK(t.insert(300, 15) == 1);
    CHECK(t.insert(400, 15) == 2);
    CHECK(t.cell(0) == Key{400});
    CHECK_THROWS_AS(ProbeTable(12), ConfigError);
}

TEST_CASE("full table") {
    ProbeTable t(4);
    for (Key k = 0; k < 4; ++k) t.insert(k, 0);
    CHECK_THROWS_AS(t.insert(9, 0), std::length_error);
    CHECK(t.run_length(2) == 4);
    CHECK_FALSE(t.lookup(9, 1).found);
}

TEST_CASE("lookups reproduce insertion probe counts") {
    std::mt19937_64 gen(3);
    ProbeTable t(1 << 10);
    std::vector<std::pair<Key, std::size_t>> probes;
    std::vector<std::uint64_t> hashes;
    for (Key k = 0; k < 800; ++k) {
        hashes.push_back(gen() & 1023);
        probes.emplace_back(k, t.insert(k, hashes.back()));
    }
    for (Key k = 0; k < 800; ++k) {
        const auto l = t.lookup(k, hashes[k]);
        CHECK(l.found);
        CHECK(l.probes == probes[k].second);
    }
}

TEST_CASE("run lengths") {
    ProbeTable empty(16);
    for (std::uint64_t h = 0; h < 16; ++h) CHECK(empty.run_length(h) == 0);
    ProbeTable one(16);
    one.insert(1, 9);
    CHECK(one.run_length(9) == 1);
    CHECK(one.run_length(8) == 0);
    ProbeTable t(16);
    for (Key k = 3; k <= 7; ++k) t.insert(k, k);
    CHECK(t.run_length(5) == 5);
    CHECK(t.run_length(3) == 5);
    CHECK(t.run_length(8) == 0);
    ProbeTable wrap(16);
    for (Key k = 14; k < 18; ++k) wrap.insert(k, k & 15);
    CHECK(wrap.run_length(0) == 4);
    CHECK(wrap.run_length(15) == 4);
}

TEST_CASE("fresh insertion cost is bounded by the run length") {
    std::mt19937_64 gen(8);
    ProbeTable t(1 << 12);
    for (Key k = 0; k < 3000; ++k) t.insert(k, gen());
    for (std::uint64_t h = 0; h < (1 << 12); ++h) {
        const std::size_t cost = t.insertion_cost(h);
        CHECK(cost >= 1);
        CHECK(cost <= t.run_length(h) + 1);
    }
}

TEST_CASE("total displacement does not depend on insertion order") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<Key, std::uint64_t>> items;
        for (Key k = 0; k < 50; ++k) items.emplace_back(k, gen() & 63);
        auto displacement = [&] {
            ProbeTable t(64);
            std::size_t sum = 0;
            for (auto [k, h] : items) sum += t.insert(k, h) - 1;
            return sum;
        };
        const std::size_t base = displacement();
        for (int p = 0; p < 5; ++p) {
            std::shuffle(items.begin(), items.end(), gen);
            CHECK(displacement() == base);
        }
    }
}

TEST_CASE("probe statistics") {
    ProbeStats s{{1, 2, 2, 5}};
    CHECK(s.mean() == 2.5);
    CHECK(s.variance() == doctest::Approx(3.0));
    CHECK(s.cdf(0) == 0.0);
    CHECK(s.cdf(2) == 0.75);
    CHECK(s.cdf(5) == 1.0);
    CHECK(s.max() == 5);
    CHECK(s.histogram() == std::vector<std::uint64_t>{0, 1, 2, 0, 0, 1});
}

TEST_CASE("bucket and baseline helpers") {
    CHECK(bucket_of(0xffff, 16, 4) == 0xf);
    CHECK(bucket_of(0x0fff, 16, 4) == 0);
    CHECK(bucket_of(123, 16, 0) == 0);
    CHECK(fully_random_hash(1, 5) == fully_random_hash(1, 5));
    CHECK(fully_random_hash(1, 5) != fully_random_hash(2, 5));
    CHECK(dkw_tolerance(100, 100, 0.99) == doctest::Approx(2 * std::sqrt(std::log(200.0) / 200)));
}

TEST_CASE("empty key set probes once") {
    ProbeConfig cfg;
    cfg.spec = {8, 2, 2, 16, Variant::Tornado, 0};
    cfg.n = 0;
    cfg.m = 1 << 8;
    cfg.queries = 64;
    cfg.trials = 4;
    cfg.dominance_delta = 0.5;
    const auto res = probe_experiment(cfg);
    CHECK(res.tornado.samples.size() == 256);
    CHECK(std::ranges::all_of(res.tornado.samples, [](auto v) { return v == 1; }));
    CHECK(std::ranges::all_of(res.baseline.samples, [](auto v) { return v == 1; }));
    CHECK(res.dominates);
}

TEST_CASE("experiment preconditions") {
    ProbeConfig cfg;
    cfg.spec = {8, 2, 2, 16, Variant::Tornado, 0};
    cfg.m = 1 << 10;
    cfg.n = 900;
    CHECK_THROWS_AS(probe_experiment(cfg), ConfigError);
    cfg.n = 100;
    cfg.m = 1000;
    CHECK_THROWS_AS(probe_experiment(cfg), ConfigError);
    cfg.m = 1 << 20;
    CHECK_THROWS_AS(probe_experiment(cfg), ConfigError);  // wider than the 16 output bits
    cfg.m = 1 << 10;
    cfg.n = 800;  // n* at |Sigma| = 256 overflows the table
    CHECK_THROWS_AS(probe_experiment(cfg), ConfigError);
}

TEST_CASE("small probing experiment") {
    ProbeConfig cfg;
    cfg.spec = {16, 2, 3, 32, Variant::Tornado, 0};
    cfg.m = 1 << 12;
    cfg.n = 1 << 11;
    cfg.queries = 256;
    cfg.trials = 8;
    cfg.seed = 5;
    const auto res = probe_experiment(cfg);
    CHECK(res.knuth == 2.5);
    CHECK(res.tornado.mean() == doctest::Approx(res.knuth).epsilon(0.15));
    CHECK(res.baseline.mean() == doctest::Approx(res.knuth).epsilon(0.15));
    CHECK(res.n_star > cfg.n);
    CHECK(std::ranges::all_of(res.tornado.samples, [](auto v) { return v >= 1; }));
    const auto reports = probe_reports(cfg, res);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].name == "probing-knuth");
    CHECK(reports[2].name == "probing-dominance");

    std::uint64_t total = 0;
    for (const auto& row : res.histogram) total += row.count;
    CHECK(total == 3 * cfg.trials * cfg.queries);

    std::ostringstream os;
    write_histogram_csv(os, res.histogram);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "source,seed,probe_length,count");
    std::getline(is, line);
    CHECK(line.rfind("tornado,0x", 0) == 0);

    const auto again = probe_experiment(cfg);
    CHECK(again.tornado.samples == res.tornado.samples);
    CHECK(again.baseline_star.samples == res.baseline_star.samples);
}

TEST_CASE("fully random baseline approaches the Knuth reference") {
    const std::size_t m = 1 << 18, n = 3 * (m / 4);
    double sum = 0;
    std::size_t count = 0;
    for (std::uint64_t t = 0; t < 8; ++t) {
        ProbeTable table(m);
        const std::uint64_t seed = trial_seed(77, t);
        for (Key k = 0; k < n; ++k) table.insert(k, bucket_of(fully_random_hash(seed, k), 64, 18));
        for (Key q = 0; q < 4096; ++q) {
            sum += static_cast<double>(table.insertion_cost(bucket_of(fully_random_hash(seed, n + q), 64, 18)));
            ++count;
        }
    }
    CHECK(sum / static_cast<double>(count) == doctest::Approx(knuth_probe_length(0.75)).epsilon(0.05));
}

}  // TEST_SUITE
