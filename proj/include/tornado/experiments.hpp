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

// Monte Carlo and exhaustive checks of the dependence, survival and tail
// bounds. Trial t of every experiment hashes with trial_seed(seed, t), so
// results are reproducible and independent of the worker count.

#include <cstdint>
#include <span>
#include <vector>

#include "tornado/gf2.hpp"
#include "tornado/report.hpp"
#include "tornado/selectors.hpp"
#include "tornado/spec.hpp"

namespace tornado {

/// n distinct keys drawn uniformly from [0, 2^key_bits), excluding `exclude`.
std::vector<Key> random_distinct_keys(std::size_t n, unsigned key_bits, std::uint64_t seed,
                                      std::span<const Key> exclude = {});

/// Largest mu a selector may have for the dependence theorems on `spec`.
double mu_limit(const TornadoSpec& spec);

/// Fraction of hash functions for which the derived selected keys are
/// linearly dependent, against the dependence bound.
ExperimentReport measure_dependence(const Selector& sel, const TornadoSpec& spec,
                                    std::uint64_t trials, std::uint64_t seed);

/// Keys {0,1} x Sigma (c = 2) selected when the two top hash bits are zero.
Selector lower_bound_selector(const TornadoSpec& spec);

/// Dependence rate on the lower-bound instance; bound is the floor
/// 1e-2 (3/|Sigma|)^(d-2) and the upper bound is kept in params.
ExperimentReport measure_lower_bound(const TornadoSpec& spec, std::uint64_t trials,
                                     std::uint64_t seed);
double lower_bound_floor(const TornadoSpec& spec);

struct UniformityResult {
    bool uniform = false;
    std::uint64_t fillings = 0;        // table fillings enumerated
    std::uint64_t tuples = 0;          // |R|^|Y|
    std::uint64_t min_count = 0;
    std::uint64_t max_count = 0;
};

/// Enumerates every simple tabulation function from b positions of
/// 2^alphabet_bits characters into 2^out_bits values and counts the hash
/// tuples of the generalized keys ys. Throws ConfigError when the space
/// exceeds 2^24 fillings or 2^24 tuples.
UniformityResult exact_uniformity(unsigned b, unsigned alphabet_bits, unsigned out_bits,
                                  std::span<const GenKey> ys);
bool exact_uniformity_check(unsigned b, unsigned alphabet_bits, unsigned out_bits,
                            std::span<const GenKey> ys);

/// Zero-set {0a, 1a, 0b, 1b} of two-character keys (first character low).
std::vector<Key> four_key_zero_set(std::uint32_t a, std::uint32_t b, unsigned char_bits);

/// Survival of a four-key zero-set through spec.d rounds of simple derived
/// characters (no twist). Bound holds the exact survival probability.
ExperimentReport survival_d_rounds(const TornadoSpec& spec, std::span<const Key> ys,
                                   std::uint64_t trials, std::uint64_t seed);
ExperimentReport survival_one_round(const TornadoSpec& spec, std::span<const Key> ys,
                                    std::uint64_t trials, std::uint64_t seed);

struct ExactSurvival {
    std::uint64_t surviving = 0;
    std::uint64_t total = 0;
    double rate() const { return static_cast<double>(surviving) / static_cast<double>(total); }
};

/// Enumerates every filling of the c tables of one derived character.
ExactSurvival exact_one_round_survival(unsigned char_bits, unsigned c, std::span<const Key> ys);

/// Chance that bin 0 receives at least k of n fixed keys, one report per k.
std::vector<ExperimentReport> chaining_tail(const TornadoSpec& spec, std::size_t n,
                                            std::span<const unsigned> ks, std::uint64_t trials,
                                            std::uint64_t seed);

/// Chance that |X| >= (1+delta) mu and the derived selected keys are independent.
ExperimentReport chernoff_tail(const Selector& sel, const TornadoSpec& spec, double delta,
                               std::uint64_t trials, std::uint64_t seed);

/// Chance that |X| >= (1+delta) mu for selectors with mu > |Sigma|/2.
ExperimentReport large_mu_tail(const Selector& sel, const TornadoSpec& spec, double delta,
                               std::uint64_t trials, std::uint64_t seed);

}  // namespace tornado
