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

#include "tornado/linprobe.hpp"

#include <algorithm>
#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "tornado/bounds.hpp"
#include "tornado/experiments.hpp"
#include "tornado/prg.hpp"
#include "tornado/tornado_hash.hpp"
#include "tornado/trials.hpp"

namespace tornado {

ProbeTable::ProbeTable(std::size_t capacity)
    : mask_(capacity - 1), keys_(capacity, 0), used_(capacity, 0) {
    if (capacity == 0 || (capacity & (capacity - 1)) != 0)
        throw ConfigError("table capacity must be a power of two");
}

std::size_t ProbeTable::insert(Key key, std::uint64_t hash) {
    if (count_ == capacity()) throw std::length_error("linear probing table is full");
    std::size_t i = hash & mask_;
    std::size_t probes = 1;
    while (used_[i]) {
        i = (i + 1) & mask_;
        ++probes;
    }
    used_[i] = 1;
    keys_[i] = key;
    ++count_;
    return probes;
}

ProbeTable::Lookup ProbeTable::lookup(Key key, std::uint64_t hash) const {
    std::size_t i = hash & mask_;
    for (std::size_t probes = 1; probes <= capacity(); ++probes) {
        if (!used_[i]) return {false, probes};
        if (keys_[i] == key) return {true, probes};
        i = (i + 1) & mask_;
    }
    return {false, capacity()};
}

std::size_t ProbeTable::insertion_cost(std::uint64_t hash) const {
    std::size_t i = hash & mask_;
    std::size_t probes = 1;
    while (used_[i] && probes <= capacity()) {
        i = (i + 1) & mask_;
        ++probes;
    }
    return probes;
}

std::size_t ProbeTable::run_length(std::uint64_t hash) const {
    const std::size_t start = hash & mask_;
    if (!used_[start]) return 0;
    if (count_ == capacity()) return capacity();
    std::size_t len = 1;
    for (std::size_t i = (start + 1) & mask_; used_[i]; i = (i + 1) & mask_) ++len;
    for (std::size_t i = (start - 1) & mask_; used_[i]; i = (i - 1) & mask_) ++len;
    return len;
}

double ProbeStats::mean() const {
    if (samples.empty()) return 0.0;
    const double sum = std::accumulate(samples.begin(), samples.end(), 0.0);
    return sum / static_cast<double>(samples.size());
}

double ProbeStats::variance() const {
    if (samples.size() < 2) return 0.0;
    const double m = mean();
    double ss = 0.0;
    for (auto s : samples) ss += (s - m) * (s - m);
    return ss / static_cast<double>(samples.size() - 1);
}

double ProbeStats::cdf(std::uint32_t t) const {
    if (samples.empty()) return 1.0;
    const auto n = std::count_if(samples.begin(), samples.end(), [t](std::uint32_t s) { return s <= t; });
    return static_cast<double>(n) / static_cast<double>(samples.size());
}

std::uint32_t ProbeStats::max() const {
    return samples.empty() ? 0 : *std::max_element(samples.begin(), samples.end());
}

std::vector<std::uint64_t> ProbeStats::histogram() const {
    std::vector<std::uint64_t> h(static_cast<std::size_t>(max()) + 1, 0);
    for (auto s : samples) ++h[s];
    return h;
}

std::uint64_t fully_random_hash(std::uint64_t seed, Key key) {
    return mix64(mix64(seed ^ kTrialSalt) ^ (key * kGolden));
}

double dkw_tolerance(std::size_t n1, std::size_t n2, double confidence) {
    const double alpha = 1.0 - confidence;
    const double l = std::log(2.0 / alpha);
    return std::sqrt(l / (2.0 * static_cast<double>(n1))) + std::sqrt(l / (2.0 * static_cast<double>(n2)));
}

namespace {

struct TrialSamples {
    std::vector<std::uint32_t> tornado, baseline, baseline_star, tornado_runs, baseline_runs;
};

// Largest gap by which b's CDF exceeds a's, over all thresholds.
double max_cdf_excess(const ProbeStats& a, const ProbeStats& b) {
    const auto ha = a.histogram();
    const auto hb = b.histogram();
    const std::size_t top = std::max(ha.size(), hb.size());
    double ca = 0.0, cb = 0.0, gap = 0.0;
    const double na = static_cast<double>(a.samples.size());
    const double nb = static_cast<double>(b.samples.size());
    for (std::size_t t = 0; t < top; ++t) {
        if (t < ha.size()) ca += static_cast<double>(ha[t]) / na;
        if (t < hb.size()) cb += static_cast<double>(hb[t]) / nb;
        gap = std::max(gap, cb - ca);
    }
    return gap;
}

void append_histogram(std::vector<HistogramRow>& rows, const char* source, std::uint64_t seed,
                      const std::vector<std::uint32_t>& samples) {
    ProbeStats s{samples};
    const auto h = s.histogram();
    for (std::size_t v = 0; v < h.size(); ++v)
        if (h[v]) rows.push_back({source, seed, static_cast<std::uint32_t>(v), h[v]});
}

}  // namespace

ProbeExperimentResult probe_experiment(const ProbeConfig& cfg) {
    cfg.spec.validate();
    if (cfg.m == 0 || (cfg.m & (cfg.m - 1)) != 0) throw ConfigError("m must be a power of two");
    if (cfg.n * 5 > cfg.m * 4) throw ConfigError("load n/m must not exceed 4/5");
    const unsigned table_bits = static_cast<unsigned>(std::countr_zero(cfg.m));
    if (table_bits > cfg.spec.out_bits) throw ConfigError("out_bits must cover log2(m)");

    ProbeExperimentResult res;
    res.n_star = static_cast<std::size_t>(std::ceil(dominance_baseline_size(
        static_cast<double>(cfg.n), static_cast<double>(cfg.spec.sigma_size()), cfg.dominance_delta)));
    if (res.n_star >= cfg.m) throw ConfigError("baseline size n* does not fit in the table");
    res.knuth = knuth_probe_length(static_cast<double>(cfg.n) / static_cast<double>(cfg.m));

    const unsigned key_bits = cfg.spec.key_bits();
    std::vector<TrialSamples> per_trial(cfg.trials);
    for_each_trial(cfg.trials, [&](std::uint64_t t) {
        const std::uint64_t seed = trial_seed(cfg.seed, t);
        const std::vector<Key> keys = random_distinct_keys(res.n_star, key_bits, mix64(seed));
        const std::span<const Key> s(keys.data(), cfg.n);
        const std::vector<Key> queries = random_distinct_keys(cfg.queries, key_bits, mix64(seed + 1), keys);

        const TornadoHash h = TornadoHash::build(cfg.spec, seed);
        const std::uint64_t random_seed = mix64(seed ^ kTableSalt);
        auto tornado_bucket = [&](Key x) { return bucket_of(h.eval(x), cfg.spec.out_bits, table_bits); };
        auto random_bucket = [&](Key x) { return bucket_of(fully_random_hash(random_seed, x), 64, table_bits); };

        ProbeTable tornado_table(cfg.m), random_table(cfg.m);
        for (Key x : s) {
            tornado_table.insert(x, tornado_bucket(x));
            random_table.insert(x, random_bucket(x));
        }
        TrialSamples& out = per_trial[t];
        for (Key q : queries) {
            const auto tb = tornado_bucket(q);
            const auto rb = random_bucket(q);
            out.tornado.push_back(static_cast<std::uint32_t>(tornado_table.insertion_cost(tb)));
            out.tornado_runs.push_back(static_cast<std::uint32_t>(tornado_table.run_length(tb)));
            out.baseline.push_back(static_cast<std::uint32_t>(random_table.insertion_cost(rb)));
            out.baseline_runs.push_back(static_cast<std::uint32_t>(random_table.run_length(rb)));
        }
        for (Key x : std::span<const Key>(keys).subspan(cfg.n)) random_table.insert(x, random_bucket(x));
        for (Key q : queries)
            out.baseline_star.push_back(static_cast<std::uint32_t>(random_table.insertion_cost(random_bucket(q))));
    });

    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        const TrialSamples& s = per_trial[t];
        auto append = [](ProbeStats& dst, const std::vector<std::uint32_t>& src) {
            dst.samples.insert(dst.samples.end(), src.begin(), src.end());
        };
        append(res.tornado, s.tornado);
        append(res.baseline, s.baseline);
        append(res.baseline_star, s.baseline_star);
        append(res.tornado_runs, s.tornado_runs);
        append(res.baseline_runs, s.baseline_runs);
        const std::uint64_t seed = trial_seed(cfg.seed, t);
        append_histogram(res.histogram, "tornado", seed, s.tornado);
        append_histogram(res.histogram, "fully-random", seed, s.baseline);
        append_histogram(res.histogram, "fully-random-nstar", seed, s.baseline_star);
    }

    res.max_cdf_gap = max_cdf_excess(res.tornado, res.baseline_star);
    res.dkw_tolerance = dkw_tolerance(res.tornado.samples.size(), res.baseline_star.samples.size(),
                                      cfg.confidence);
    res.dominates = res.max_cdf_gap <= res.dkw_tolerance;
    return res;
}

std::vector<ExperimentReport> probe_reports(const ProbeConfig& cfg, const ProbeExperimentResult& res) {
    std::vector<ExperimentReport> out;
    auto base = [&](const char* name) {
        ExperimentReport r;
        r.name = name;
        r.seed = cfg.seed;
        r.trials = cfg.trials;
        r.params["spec"] = cfg.spec.to_string();
        r.params["n"] = cfg.n;
        r.params["m"] = cfg.m;
        r.params["queries"] = cfg.queries;
        return r;
    };
    const double samples = static_cast<double>(res.tornado.samples.size());

    ExperimentReport knuth = base("probing-knuth");
    knuth.estimate = res.tornado.mean();
    knuth.std_error = std::sqrt(res.tornado.variance() / samples);
    knuth.bound = res.knuth;
    knuth.params["relative_gap"] = std::abs(knuth.estimate - res.knuth) / res.knuth;
    knuth.verdict = Verdict::Informational;
    out.push_back(knuth);

    ExperimentReport baseline = base("probing-baseline");
    baseline.estimate = res.tornado.mean();
    baseline.std_error = knuth.std_error;
    baseline.bound = res.baseline.mean();
    baseline.params["relative_gap"] = std::abs(baseline.estimate - baseline.bound) / baseline.bound;
    baseline.params["tornado_mean_run"] = res.tornado_runs.mean();
    baseline.params["baseline_mean_run"] = res.baseline_runs.mean();
    baseline.verdict = Verdict::Informational;
    out.push_back(baseline);

    ExperimentReport dom = base("probing-dominance");
    dom.estimate = res.max_cdf_gap;
    dom.bound = res.dkw_tolerance;
    dom.params["n_star"] = res.n_star;
    dom.params["baseline_star_mean"] = res.baseline_star.mean();
    dom.params["dominance_delta"] = cfg.dominance_delta;
    dom.params["confidence"] = cfg.confidence;
    dom.verdict = res.dominates ? Verdict::WithinBound : Verdict::Violation;
    out.push_back(dom);
    return out;
}

void write_histogram_csv(std::ostream& os, std::span<const HistogramRow> rows) {
    os << "source,seed,probe_length,count\n";
    char buf[24];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "0x%" PRIx64, row.seed);
        os << row.source << ',' << buf << ',' << row.probe_length << ',' << row.count << '\n';
    }
}

}  // namespace tornado
