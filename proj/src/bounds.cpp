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

#include "tornado/bounds.hpp"

#include <cmath>

#include "tornado/spec.hpp"

namespace tornado {

namespace {

double tail_term(double sigma_size) { return std::exp2(-sigma_size / 2.0); }

}  // namespace

BoundValue dependence_bound(double mu, unsigned d, double sigma_size) {
    if (!(mu > 0.0)) throw ConfigError("dependence bound needs mu > 0");
    if (!(sigma_size >= 2.0)) throw ConfigError("alphabet size must be at least 2");
    const double poly = 7.0 * mu * mu * mu * std::pow(3.0 / sigma_size, static_cast<double>(d) + 1.0);
    return {poly + tail_term(sigma_size), sigma_size >= 256.0};
}

BoundValue dependence_bound_mix(double mu, unsigned d, double sigma_size, double psi_size) {
    if (!(mu > 0.0)) throw ConfigError("dependence bound needs mu > 0");
    if (d < 2) throw ConfigError("tornado-mix bound needs d >= 2");
    if (!(psi_size >= sigma_size)) throw ConfigError("tornado-mix bound needs |Psi| >= |Sigma|");
    const double r = 3.0 / psi_size;
    const double poly =
        14.0 * mu * mu * mu * r * r * std::pow(3.0 / sigma_size, static_cast<double>(d) - 1.0);
    return {poly + tail_term(sigma_size), sigma_size >= 256.0};
}

double chernoff_upper(double mu, double delta) {
    if (!(delta > 0.0)) throw ConfigError("Chernoff bound needs delta > 0");
    return std::exp(mu * (delta - (1.0 + delta) * std::log1p(delta)));
}

double chaining_bound(unsigned k, unsigned d, double sigma_size) {
    if (k == 0) return 1.0;
    const double kk = static_cast<double>(k);
    const double first = std::exp((kk - 1.0) - kk * std::log(kk));
    return first + 7.0 * std::pow(3.0 / sigma_size, static_cast<double>(d) + 1.0) +
           tail_term(sigma_size);
}

double large_mu_delta0(double mu, double queries, double sigma_size, double delta) {
    const double half = sigma_size / 2.0;
    if (!(mu > half)) throw ConfigError("large-mu tail needs mu > |Sigma|/2");
    if (!(queries < half)) throw ConfigError("large-mu tail needs |Q| < |Sigma|/2");
    return mu / (mu - queries) * (half - queries) / half * delta;
}

double large_mu_bound(double mu, double queries, unsigned d, double sigma_size, double delta) {
    const double half = sigma_size / 2.0;
    const double delta0 = large_mu_delta0(mu, queries, sigma_size, delta);
    return 4.0 * chernoff_upper(half, delta0) + 4.0 * dependence_bound(half, d, sigma_size).value;
}

double survival_one_round_probability(double sigma_size) {
    return (3.0 - 2.0 / sigma_size) / sigma_size;
}

double survival_rounds_probability(double sigma_size, unsigned rounds) {
    return std::pow(survival_one_round_probability(sigma_size), static_cast<double>(rounds));
}

double knuth_probe_length(double load) {
    if (!(load >= 0.0 && load < 1.0)) throw ConfigError("load factor must be in [0, 1)");
    const double eps = 1.0 - load;
    return (1.0 + 1.0 / (eps * eps)) / 2.0;
}

double dominance_baseline_size(double n, double sigma_size, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("dominance delta must be in (0, 1)");
    return (1.0 + 15.0 * std::sqrt(std::log(1.0 / delta) / sigma_size)) * n;
}

}  // namespace tornado
