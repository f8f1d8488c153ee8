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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tornado/report.hpp"
#include "tornado/spec.hpp"

namespace tornado {

/// Linear-probing table of m = 2^k cells without deletions.
class ProbeTable {
public:
    explicit ProbeTable(std::size_t capacity);

    std::size_t capacity() const { return keys_.size(); }
    std::size_t size() const { return count_; }
    std::optional<Key> cell(std::size_t i) const {
        if (!used_[i]) return std::nullopt;
        return keys_[i];
    }

    /// Places key in the first free cell at or after hash (cyclically) and
    /// returns the number of cells inspected. Throws std::length_error when full.
    std::size_t insert(Key key, std::uint64_t hash);

    struct Lookup {
        bool found = false;
        std::size_t probes = 0;
    };
    Lookup lookup(Key key, std::uint64_t hash) const;

    /// Cells a fresh insertion at `hash` would inspect (up to and including
    /// the first empty cell).
    std::size_t insertion_cost(std::uint64_t hash) const;

    /// Length of the maximal occupied interval containing cell hash; 0 if empty.
    std::size_t run_length(std::uint64_t hash) const;

private:
    std::size_t mask_;
    std::size_t count_ = 0;
    std::vector<Key> keys_;
    std::vector<std::uint8_t> used_;
};

/// Samples of probe lengths (or run lengths) with summary statistics.
struct ProbeStats {
    std::vector<std::uint32_t> samples;

    double mean() const;
    double variance() const;
    /// Fraction of samples <= t.
    double cdf(std::uint32_t t) const;
    std::uint32_t max() const;
    /// histogram[v] = number of samples equal to v.
    std::vector<std::uint64_t> histogram() const;
};

struct HistogramRow {
    std::string source;
    std::uint64_t seed;
    std::uint32_t probe_length;
    std::uint64_t count;
};

struct ProbeConfig {
    TornadoSpec spec{16, 2, 4, 32, Variant::Tornado, 0};
    std::size_t n = 3 << 14;
    std::size_t m = 1 << 16;
    std::size_t queries = 1 << 10;
    std::uint64_t trials = 64;
    std::uint64_t seed = 1;
    double dominance_delta = 0.1;  // sets the baseline size n*
    double confidence = 0.99;      // for the DKW tolerance
};

struct ProbeExperimentResult {
    ProbeStats tornado;        // insertion probe lengths, tornado hashing
    ProbeStats baseline;       // same key sets, fully random hashing
    ProbeStats baseline_star;  // n* keys, fully random hashing
    ProbeStats tornado_runs;   // run length at the query's cell
    ProbeStats baseline_runs;
    std::size_t n_star = 0;
    double knuth = 0.0;
    double max_cdf_gap = 0.0;  // max over t of baseline_star.cdf(t) - tornado.cdf(t)
    double dkw_tolerance = 0.0;
    bool dominates = false;
    std::vector<HistogramRow> histogram;
};

/// Bucket of a hash: the top log2(m) of its out_bits bits.
inline std::uint64_t bucket_of(std::uint64_t hash, unsigned out_bits, unsigned table_bits) {
    return table_bits == 0 ? 0 : hash >> (out_bits - table_bits);
}

/// Fully random stand-in: a seeded 64-bit mixer per key.
std::uint64_t fully_random_hash(std::uint64_t seed, Key key);

/// Two-sample DKW band: sum of sqrt(ln(2/alpha) / (2 n_i)), alpha = 1 - confidence.
double dkw_tolerance(std::size_t n1, std::size_t n2, double confidence);

/// Inserts n random keys per trial under tornado and fully random hashing,
/// then measures insertion cost of fresh query keys. Throws ConfigError if
/// n/m > 4/5, m is not a power of two, or n* does not fit in the table.
ProbeExperimentResult probe_experiment(const ProbeConfig& config);

/// Summary reports: tornado mean vs Knuth, tornado vs baseline, dominance.
std::vector<ExperimentReport> probe_reports(const ProbeConfig& config,
                                            const ProbeExperimentResult& result);

/// CSV with columns source,seed,probe_length,count.
void write_histogram_csv(std::ostream& os, std::span<const HistogramRow> rows);

}  // namespace tornado
