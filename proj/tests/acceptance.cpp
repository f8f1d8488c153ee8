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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// gating criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "tornado/bench.hpp"
#include "tornado/bounds.hpp"
#include "tornado/experiments.hpp"
#include "tornado/folded.hpp"
#include "tornado/gf2.hpp"
#include "tornado/linprobe.hpp"
#include "tornado/selectors.hpp"

using namespace tornado;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome twist_bijectivity() {
    std::vector<Key> all(1 << 16);
    std::iota(all.begin(), all.end(), Key{0});
    int failures = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto h = TornadoHash::build({8, 2, 4, 32, Variant::Tornado, 0}, trial_seed(0xa1, s));
        failures += !derived_injectivity_check(h, all);
    }
    return {failures == 0, fmt("100 seeds x 65536 keys, %d seeds not injective", failures)};
}

Outcome folded_equivalence() {
    std::uint64_t mismatches = 0, checked = 0;
    for (const TornadoSpec& spec : {TornadoSpec{8, 4, 3, 32, Variant::Tornado, 0},
                                    TornadoSpec{8, 4, 4, 24, Variant::Tornado, 0}}) {
        for (std::uint64_t s = 0; s < 10; ++s) {
            const auto h = TornadoHash::build(spec, trial_seed(0xa2, s));
            const FoldedTables f = fold_tables(h);
            SplitMix64 rng(mix64(s + 0xa2));
            for (int i = 0; i < 100000; ++i, ++checked) {
                const Key x = rng.next() & 0xffffffff;
                mismatches += eval_folded(f, x) != h.eval(x);
            }
        }
    }
    return {mismatches == 0, fmt("%llu keys over both profiles, %llu mismatches",
                                 static_cast<unsigned long long>(checked),
                                 static_cast<unsigned long long>(mismatches))};
}

Outcome exact_equivalence() {
    const auto layout = PositionLayout::uniform(2, 2);
    auto gen = [&](std::initializer_list<std::pair<unsigned, std::uint32_t>> chars) {
        GenKey g(layout.dimension());
        for (auto [p, ch] : chars) g.flip(layout.bit_index(p, ch));
        return g;
    };
    const std::vector<GenKey> independent{gen({{0, 0}, {1, 2}}), gen({{0, 1}, {1, 2}}), gen({{0, 3}, {1, 0}})};
    const std::vector<GenKey> zero{genkey_from_key(0x0, layout), genkey_from_key(0x1, layout),
                                   genkey_from_key(0x4, layout), genkey_from_key(0x5, layout)};
    const UniformityResult u = exact_uniformity(2, 2, 2, independent);
    const UniformityResult z = exact_uniformity(2, 2, 2, zero);
    const bool pass = is_linearly_independent(independent) && u.uniform && u.min_count == 1024 &&
                      u.fillings == 65536 && is_zero_set(zero) && !z.uniform;
    return {pass, fmt("independent set: every tuple %llu..%llu times over %llu fillings; zero-set counts %llu..%llu",
                      static_cast<unsigned long long>(u.min_count), static_cast<unsigned long long>(u.max_count),
                      static_cast<unsigned long long>(u.fillings), static_cast<unsigned long long>(z.min_count),
                      static_cast<unsigned long long>(z.max_count))};
}

Outcome dependence_bound_check() {
    const TornadoSpec spec{8, 2, 4, 32, Variant::Tornado, 0};
    const Selector sel = Selector::fixed_set(random_distinct_keys(128, 16, 0xa4));
    const ExperimentReport r = measure_dependence(sel, spec, 100000, 0xa4);
    const bool bound_ok = std::abs(r.bound - 3.25e-3) < 0.01e-3;
    const bool pass = bound_ok && r.estimate <= r.bound + 4 * r.std_error;
    return {pass, fmt("estimate %.3e (stderr %.1e) vs bound %.4e over %llu seeds", r.estimate, r.std_error,
                      r.bound, static_cast<unsigned long long>(r.trials))};
}

Outcome one_round_survival() {
    const TornadoSpec spec{4, 2, 1, 8, Variant::SimpleTornado, 0};
    const ExperimentReport r = survival_one_round(spec, four_key_zero_set(1, 2, 4), 1000000, 0xa5);
    const double sd = binomial_stderr(r.bound, r.trials);
    const ExactSurvival ex = exact_one_round_survival(2, 2, four_key_zero_set(1, 2, 2));
    const bool sampled = r.bound == 0.1796875 && std::abs(r.estimate - r.bound) <= 3 * sd;
    const bool exact = ex.rate() == survival_one_round_probability(4);
    return {sampled && exact,
            fmt("|Sigma|=16: %.6f vs %.7f (%.2f sigma); |Sigma|=4 exact %llu/%llu = %.4f", r.estimate, r.bound,
                (r.estimate - r.bound) / sd, static_cast<unsigned long long>(ex.surviving),
                static_cast<unsigned long long>(ex.total), ex.rate())};
}

Outcome d_round_survival() {
    const TornadoSpec spec{4, 2, 2, 8, Variant::SimpleTornado, 0};
    const ExperimentReport r = survival_d_rounds(spec, four_key_zero_set(1, 2, 4), 1000000, 0xa6);
    const double sd = binomial_stderr(r.bound, r.trials);
    const bool pass = r.bound == 0.1796875 * 0.1796875 && std::abs(r.estimate - r.bound) <= 3 * sd;
    return {pass, fmt("d=2: %.6f vs %.6f (%.2f sigma)", r.estimate, r.bound, (r.estimate - r.bound) / sd)};
}

Outcome lower_bound_visibility() {
    const TornadoSpec spec{4, 2, 3, 8, Variant::Tornado, 0};
    const ExperimentReport r = measure_lower_bound(spec, 1000000, 0xa7);
    const double floor = 1e-2 * (3.0 / 16);
    const bool pass = r.estimate > 0 && r.estimate >= floor;
    return {pass, fmt("dependence rate %.4e (floor %.4e, upper bound %.3g) over %llu trials", r.estimate, floor,
                      r.params["upper_bound"].get<double>(), static_cast<unsigned long long>(r.trials))};
}

Outcome chaining() {
    const TornadoSpec spec{8, 2, 4, 8, Variant::Tornado, 0};
    const std::vector<unsigned> ks{4, 8};
    const auto reports = chaining_tail(spec, 256, ks, 100000, 0xa8);
    bool pass = true;
    std::string detail;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        pass &= r.estimate <= r.bound + 4 * r.std_error;
        detail += fmt("%sk=%u: %.3e vs %.3e", i ? "; " : "", ks[i], r.estimate, r.bound);
    }
    return {pass, detail};
}

Outcome chernoff() {
    const TornadoSpec spec{8, 2, 4, 6, Variant::Tornado, 0};
    const Selector sel = Selector::fixed_bin(random_distinct_keys(4096, 16, 0xa9), 6, 0);
    const ExperimentReport r = chernoff_tail(sel, spec, 0.5, 100000, 0xa9);
    const bool pass = mu(sel) == 64 && r.estimate <= r.bound + 4 * r.std_error;
    return {pass, fmt("mu=%.0f delta=0.5: %.3e (stderr %.1e) vs %.3e", mu(sel), r.estimate, r.std_error, r.bound)};
}

Outcome probing() {
    ProbeConfig cfg;  // m = 2^16, n = 3 * 2^14, 64 seeds x 2^10 queries, |Sigma| = 2^16
    cfg.seed = 0xaa;
    const ProbeExperimentResult res = probe_experiment(cfg);
    const double t = res.tornado.mean(), b = res.baseline.mean();
    const double knuth_gap = std::abs(t - res.knuth) / res.knuth;
    const double base_gap = std::abs(t - b) / b;
    const bool pass = knuth_gap <= 0.10 && base_gap <= 0.03 && res.dominates;
    return {pass, fmt("tornado %.3f, Knuth %.2f (%.1f%%), baseline %.3f (%.1f%%); CDF gap %.4f vs DKW %.4f at n*=%zu",
                      t, res.knuth, 100 * knuth_gap, b, 100 * base_gap, res.max_cdf_gap, res.dkw_tolerance,
                      res.n_star)};
}

Outcome gf2_oracle() {
    std::mt19937_64 gen(0xab);
    int disagreements = 0, bad_witnesses = 0, dependent = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const unsigned positions = 1 + gen() % 3;
        const unsigned bits = 1 + gen() % 2;
        const auto layout = PositionLayout::uniform(positions, bits);
        const std::size_t n = 1 + gen() % 12;
        std::vector<GenKey> ys;
        for (std::size_t i = 0; i < n; ++i) {
            GenKey g(layout.dimension());
            for (std::size_t b = 0; b < layout.dimension(); ++b)
                if (gen() & 1) g.flip(b);
            ys.push_back(std::move(g));
        }
        bool oracle = true;
        for (std::uint32_t mask = 1; mask < (1u << n) && oracle; ++mask) {
            GenKey acc(layout.dimension());
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) acc ^= ys[i];
            oracle = !acc.empty();
        }
        disagreements += is_linearly_independent(ys) != oracle;
        if (!oracle) {
            ++dependent;
            std::vector<GenKey> w;
            for (auto i : find_zero_subset(ys)) w.push_back(ys[i]);
            bad_witnesses += w.empty() || !is_zero_set(w);
        }
    }
    return {disagreements == 0 && bad_witnesses == 0,
            fmt("10000 sets (%d dependent): %d disagreements, %d bad witnesses", dependent, disagreements,
                bad_witnesses)};
}

Outcome bench_parity() {
    const std::size_t n = 1 << 20;
    const BenchResult t1 = throughput("tornado32-folded", n, 9, 0xac);
    const BenchResult p1 = throughput("poly2-mersenne", n, 9, 0xac);
    const BenchResult t2 = throughput("tornado32-folded", n, 3, 0xac);
    const BenchResult p2 = throughput("poly2-mersenne", n, 3, 0xac);
    const bool deterministic = t1.checksum_stable && p1.checksum_stable && t1.checksum == t2.checksum &&
                               p1.checksum == p2.checksum;
    const double ratio = t1.ns_per_key / p1.ns_per_key;
    const bool parity = ratio >= 0.5 && ratio <= 2.0;
    return {deterministic, fmt("checksums %s; tornado32 %.2f ns/key, poly2 %.2f ns/key, ratio %.2f (%s, informational)",
                               deterministic ? "deterministic" : "NOT deterministic", t1.ns_per_key, p1.ns_per_key,
                               ratio, parity ? "within 2x" : "outside 2x")};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"twist bijectivity", twist_bijectivity},
        {"folded equals reference", folded_equivalence},
        {"exact uniformity equivalence", exact_equivalence},
        {"dependence bound", dependence_bound_check},
        {"one-round survival", one_round_survival},
        {"d-round survival", d_round_survival},
        {"lower bound visibility", lower_bound_visibility},
        {"chaining tail", chaining},
        {"Chernoff tail", chernoff},
        {"linear probing", probing},
        {"GF(2) oracle equivalence", gf2_oracle},
        {"benchmark parity", bench_parity},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s [%2zu] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
