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

#include "tornado/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_set>

#include "tornado/bounds.hpp"
#include "tornado/prg.hpp"
#include "tornado/tornado_hash.hpp"
#include "tornado/trials.hpp"

namespace tornado {

namespace {

void add_spec_params(ExperimentReport& r, const TornadoSpec& spec) {
    r.params["spec"] = spec.to_string();
}

bool four_values_zero_set(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
    return (a == b && c == d) || (a == c && b == d) || (a == d && b == c);
}

void check_four_key_zero_set(std::span<const Key> ys, unsigned char_bits, unsigned c) {
    if (c < 2) throw ConfigError("survival needs c >= 2");
    if (ys.size() != 4) throw ConfigError("survival needs a zero-set of exactly four keys");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (ys[i] == ys[j]) throw ConfigError("zero-set keys must be distinct");
    const std::uint64_t mask = low_mask(char_bits);
    for (unsigned p = 0; p < c; ++p) {
        auto ch = [&](std::size_t i) {
            return static_cast<std::uint32_t>((ys[i] >> (p * char_bits)) & mask);
        };
        if (!four_values_zero_set(ch(0), ch(1), ch(2), ch(3)))
            throw ConfigError("keys do not form a zero-set");
    }
    if (char_bits * c < 64 && std::any_of(ys.begin(), ys.end(), [&](Key k) { return k >> (char_bits * c); }))
        throw ConfigError("zero-set key outside the key universe");
}

}  // namespace

std::vector<Key> random_distinct_keys(std::size_t n, unsigned key_bits, std::uint64_t seed,
                                      std::span<const Key> exclude) {
    if (key_bits == 0 || key_bits > 64) throw ConfigError("key_bits must be in 1..64");
    std::unordered_set<Key> excluded(exclude.begin(), exclude.end());
    const long double universe = std::ldexp(1.0L, static_cast<int>(key_bits));
    if (static_cast<long double>(n + excluded.size()) > universe)
        throw ConfigError("more keys requested than the universe holds");
    SplitMix64 rng(seed);
    std::vector<Key> out;
    out.reserve(n);
    if (key_bits <= 24 && static_cast<long double>(n) * 2 > universe) {
        // Dense request: shuffle the whole universe.
        std::vector<Key> all;
        for (Key k = 0; k < (Key{1} << key_bits); ++k)
            if (!excluded.count(k)) all.push_back(k);
        for (std::size_t i = 0; i < n; ++i) {
            std::swap(all[i], all[i + rng.below(all.size() - i)]);
            out.push_back(all[i]);
        }
        return out;
    }
    std::unordered_set<Key> seen;
    seen.reserve(n * 2);
    const std::uint64_t mask = low_mask(key_bits);
    while (out.size() < n) {
        const Key k = rng.next() & mask;
        if (excluded.count(k) || !seen.insert(k).second) continue;
        out.push_back(k);
    }
    return out;
}

double mu_limit(const TornadoSpec& spec) {
    const std::size_t size = spec.variant == Variant::TornadoMix ? spec.psi_size() : spec.sigma_size();
    return static_cast<double>(size) / 2.0;
}

ExperimentReport measure_dependence(const Selector& sel, const TornadoSpec& spec,
                                    std::uint64_t trials, std::uint64_t seed) {
    spec.validate();
    const double m = mu(sel);
    if (m > mu_limit(spec)) throw ConfigError("selector mu exceeds the alphabet limit");

    const std::uint64_t dependent = count_trials(trials, [&](std::uint64_t t) -> std::uint64_t {
        const TornadoHash h = TornadoHash::build(spec, trial_seed(seed, t));
        return selected_derived_independent(sel, h) ? 0 : 1;
    });

    ExperimentReport r;
    r.name = "independence";
    r.seed = seed;
    set_proportion(r, dependent, trials);
    const double sigma = static_cast<double>(spec.sigma_size());
    BoundValue bound = spec.variant == Variant::TornadoMix
                           ? dependence_bound_mix(m, spec.d, sigma, static_cast<double>(spec.psi_size()))
                           : dependence_bound(m, spec.d, sigma);
    r.bound = bound.value;
    r.verdict = bound.in_regime ? upper_bound_verdict(r.estimate, r.std_error, r.bound)
                                : Verdict::Informational;
    add_spec_params(r, spec);
    r.params["mu"] = m;
    r.params["dependent"] = dependent;
    return r;
}

Selector lower_bound_selector(const TornadoSpec& spec) {
    if (spec.c != 2) throw ConfigError("the lower-bound instance uses c = 2");
    if (spec.out_bits < 2) throw ConfigError("the lower-bound instance needs out_bits >= 2");
    std::vector<Key> keys;
    for (std::uint64_t a = 0; a < spec.sigma_size(); ++a) {
        keys.push_back(0 | (a << spec.char_bits));
        keys.push_back(1 | (a << spec.char_bits));
    }
    return Selector::bit_prefix(std::move(keys), spec.out_bits, 2, {0});
}

double lower_bound_floor(const TornadoSpec& spec) {
    return 1e-2 * std::pow(3.0 / static_cast<double>(spec.sigma_size()),
                           static_cast<double>(spec.d) - 2.0);
}

ExperimentReport measure_lower_bound(const TornadoSpec& spec, std::uint64_t trials,
                                     std::uint64_t seed) {
    const Selector sel = lower_bound_selector(spec);
    ExperimentReport r = measure_dependence(sel, spec, trials, seed);
    r.name = "lowerbound";
    r.params["upper_bound"] = r.bound;
    r.bound = lower_bound_floor(spec);
    if (spec.sigma_size() < 256) {
        r.verdict = Verdict::Informational;
    } else {
        r.verdict = r.estimate + 4.0 * r.std_error < r.bound ? Verdict::Violation : Verdict::WithinBound;
    }
    return r;
}

UniformityResult exact_uniformity(unsigned b, unsigned alphabet_bits, unsigned out_bits,
                                  std::span<const GenKey> ys) {
    const std::size_t entries = std::size_t{b} << alphabet_bits;
    if (out_bits == 0 || entries * out_bits > 24)
        throw ConfigError("table space too large to enumerate");
    if (ys.size() * out_bits > 24) throw ConfigError("too many keys to tabulate hash tuples");
    for (const GenKey& y : ys)
        if (y.dimension() != entries) throw ConfigError("generalized key dimension mismatch");

    // Set bits of every key, i.e. the table entries it xors together.
    std::vector<std::vector<std::size_t>> members(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i)
        for (std::size_t bit = 0; bit < entries; ++bit)
            if (ys[i].test(bit)) members[i].push_back(bit);

    UniformityResult res;
    res.fillings = std::uint64_t{1} << (entries * out_bits);
    res.tuples = std::uint64_t{1} << (ys.size() * out_bits);
    std::vector<std::uint64_t> counts(res.tuples, 0);
    const std::uint64_t mask = low_mask(out_bits);
    for (std::uint64_t f = 0; f < res.fillings; ++f) {
        std::uint64_t tuple = 0;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            std::uint64_t h = 0;
            for (std::size_t bit : members[i]) h ^= (f >> (bit * out_bits)) & mask;
            tuple |= h << (i * out_bits);
        }
        ++counts[tuple];
    }
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    res.min_count = *lo;
    res.max_count = *hi;
    res.uniform = res.min_count == res.max_count;
    return res;
}

bool exact_uniformity_check(unsigned b, unsigned alphabet_bits, unsigned out_bits,
                            std::span<const GenKey> ys) {
    return exact_uniformity(b, alphabet_bits, out_bits, ys).uniform;
}

std::vector<Key> four_key_zero_set(std::uint32_t a, std::uint32_t b, unsigned char_bits) {
    const Key ka = Key{a} << char_bits;
    const Key kb = Key{b} << char_bits;
    return {0 | ka, 1 | ka, 0 | kb, 1 | kb};
}

ExperimentReport survival_d_rounds(const TornadoSpec& spec, std::span<const Key> ys,
                                   std::uint64_t trials, std::uint64_t seed) {
    TornadoSpec simple = spec;
    simple.variant = Variant::SimpleTornado;
    simple.psi_bits = 0;
    simple.validate();
    check_four_key_zero_set(ys, simple.char_bits, simple.c);
    const std::array<Key, 4> keys{ys[0], ys[1], ys[2], ys[3]};

    const std::uint64_t survived = count_trials(trials, [&](std::uint64_t t) -> std::uint64_t {
        if (simple.d == 0) return 1;
        const TornadoHash h = TornadoHash::build(simple, trial_seed(seed, t));
        std::array<std::array<std::uint32_t, kMaxPositions>, 4> derived;
        for (std::size_t i = 0; i < 4; ++i) h.derive_into(keys[i], derived[i]);
        for (unsigned p = simple.c; p < simple.positions(); ++p) {
            if (!four_values_zero_set(derived[0][p], derived[1][p], derived[2][p], derived[3][p]))
                return 0;
        }
        return 1;
    });

    ExperimentReport r;
    r.name = simple.d == 1 ? "survival-one-round" : "survival";
    r.seed = seed;
    set_proportion(r, survived, trials);
    const double sigma = static_cast<double>(simple.sigma_size());
    r.bound = survival_rounds_probability(sigma, simple.d);
    r.verdict = Verdict::Informational;
    const double target_sd = binomial_stderr(r.bound, trials);
    add_spec_params(r, simple);
    r.params["rounds"] = simple.d;
    r.params["target_stderr"] = target_sd;
    r.params["within_3sigma"] = std::abs(r.estimate - r.bound) <= 3.0 * target_sd;
    return r;
}

ExperimentReport survival_one_round(const TornadoSpec& spec, std::span<const Key> ys,
                                    std::uint64_t trials, std::uint64_t seed) {
    TornadoSpec one = spec;
    one.d = 1;
    return survival_d_rounds(one, ys, trials, seed);
}

ExactSurvival exact_one_round_survival(unsigned char_bits, unsigned c, std::span<const Key> ys) {
    check_four_key_zero_set(ys, char_bits, c);
    const std::size_t sigma = std::size_t{1} << char_bits;
    const std::size_t entries = c * sigma;
    if (entries * char_bits > 24) throw ConfigError("table space too large to enumerate");
    const std::uint64_t mask = low_mask(char_bits);

    ExactSurvival out;
    out.total = std::uint64_t{1} << (entries * char_bits);
    for (std::uint64_t f = 0; f < out.total; ++f) {
        std::array<std::uint32_t, 4> next{};
        for (std::size_t i = 0; i < 4; ++i) {
            std::uint64_t acc = 0;
            for (unsigned j = 0; j < c; ++j) {
                const std::uint64_t ch = (ys[i] >> (j * char_bits)) & mask;
                acc ^= (f >> ((j * sigma + ch) * char_bits)) & mask;
            }
            next[i] = static_cast<std::uint32_t>(acc);
        }
        out.surviving += four_values_zero_set(next[0], next[1], next[2], next[3]);
    }
    return out;
}

std::vector<ExperimentReport> chaining_tail(const TornadoSpec& spec, std::size_t n,
                                            std::span<const unsigned> ks, std::uint64_t trials,
                                            std::uint64_t seed) {
    spec.validate();
    if (n == 0 || (n & (n - 1)) != 0) throw ConfigError("n must be a power of two");
    if ((std::size_t{1} << spec.out_bits) != n)
        throw ConfigError("chaining needs out_bits = log2(n)");
    const std::vector<Key> keys = random_distinct_keys(n, spec.key_bits(), mix64(seed ^ kTableSalt));

    std::vector<std::uint32_t> loads(trials);
    for_each_trial(trials, [&](std::uint64_t t) {
        const TornadoHash h = TornadoHash::build(spec, trial_seed(seed, t));
        std::uint32_t load = 0;
        for (Key x : keys) load += h.eval(x) == 0;
        loads[t] = load;
    });

    std::vector<ExperimentReport> out;
    for (unsigned k : ks) {
        ExperimentReport r;
        r.name = "chaining";
        r.seed = seed;
        const auto hits = static_cast<std::uint64_t>(
            std::count_if(loads.begin(), loads.end(), [&](std::uint32_t l) { return l >= k; }));
        set_proportion(r, hits, trials);
        r.bound = chaining_bound(k, spec.d, static_cast<double>(spec.sigma_size()));
        r.verdict = spec.sigma_size() >= 256 ? upper_bound_verdict(r.estimate, r.std_error, r.bound)
                                             : Verdict::Informational;
        add_spec_params(r, spec);
        r.params["n"] = n;
        r.params["k"] = k;
        out.push_back(std::move(r));
    }
    return out;
}

ExperimentReport chernoff_tail(const Selector& sel, const TornadoSpec& spec, double delta,
                               std::uint64_t trials, std::uint64_t seed) {
    spec.validate();
    if (!(delta > 0.0)) throw ConfigError("delta must be positive");
    const double m = mu(sel);
    if (m > mu_limit(spec)) throw ConfigError("selector mu exceeds the alphabet limit");
    const double threshold = (1.0 + delta) * m;

    const std::uint64_t hits = count_trials(trials, [&](std::uint64_t t) -> std::uint64_t {
        const TornadoHash h = TornadoHash::build(spec, trial_seed(seed, t));
        const auto xs = select(sel, h);
        if (static_cast<double>(xs.size()) < threshold) return 0;
        return derived_keys_independent(h, xs) ? 1 : 0;
    });

    ExperimentReport r;
    r.name = "chernoff";
    r.seed = seed;
    set_proportion(r, hits, trials);
    r.bound = chernoff_upper(m, delta);
    r.verdict = spec.sigma_size() >= 256 ? upper_bound_verdict(r.estimate, r.std_error, r.bound)
                                         : Verdict::Informational;
    add_spec_params(r, spec);
    r.params["mu"] = m;
    r.params["delta"] = delta;
    return r;
}

ExperimentReport large_mu_tail(const Selector& sel, const TornadoSpec& spec, double delta,
                               std::uint64_t trials, std::uint64_t seed) {
    spec.validate();
    if (!(delta > 0.0)) throw ConfigError("delta must be positive");
    const double m = mu(sel);
    const double sigma = static_cast<double>(spec.sigma_size());
    std::vector<Key> queries = sel.queries;
    std::sort(queries.begin(), queries.end());
    queries.erase(std::unique(queries.begin(), queries.end()), queries.end());
    const double q = static_cast<double>(queries.size());
    const double delta0 = large_mu_delta0(m, q, sigma, delta);
    const double threshold = (1.0 + delta) * m;

    const std::uint64_t hits = count_trials(trials, [&](std::uint64_t t) -> std::uint64_t {
        const TornadoHash h = TornadoHash::build(spec, trial_seed(seed, t));
        return static_cast<double>(select(sel, h).size()) >= threshold ? 1 : 0;
    });

    ExperimentReport r;
    r.name = "large-mu-tail";
    r.seed = seed;
    set_proportion(r, hits, trials);
    r.bound = large_mu_bound(m, q, spec.d, sigma, delta);
    r.verdict = spec.sigma_size() >= 256 ? upper_bound_verdict(r.estimate, r.std_error, r.bound)
                                         : Verdict::Informational;
    add_spec_params(r, spec);
    r.params["mu"] = m;
    r.params["delta"] = delta;
    r.params["delta0"] = delta0;
    return r;
}

}  // namespace tornado
