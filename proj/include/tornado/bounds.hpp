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

// Closed-form probability bounds checked by the experiments.

namespace tornado {

struct BoundValue {
    double value = 0.0;
    bool in_regime = true;  // false when |Sigma| < 2^8, outside the proven range
};

/// 7 mu^3 (3/|Sigma|)^(d+1) + 2^(-|Sigma|/2).
BoundValue dependence_bound(double mu, unsigned d, double sigma_size);

/// 14 mu^3 (3/|Psi|)^2 (3/|Sigma|)^(d-1) + 2^(-|Sigma|/2), for tornado-mix.
BoundValue dependence_bound_mix(double mu, unsigned d, double sigma_size, double psi_size);

/// (e^delta / (1+delta)^(1+delta))^mu, evaluated in log space.
double chernoff_upper(double mu, double delta);

/// e^(k-1)/k^k + 7 (3/|Sigma|)^(d+1) + 2^(-|Sigma|/2): chance that a bin of
/// n keys hashed into n bins receives at least k keys.
double chaining_bound(unsigned k, unsigned d, double sigma_size);

/// Scaled deviation used when the selected-set mean exceeds |Sigma|/2.
double large_mu_delta0(double mu, double queries, double sigma_size, double delta);

/// 4 chernoff_upper(|Sigma|/2, delta0) + 4 dependence_bound(|Sigma|/2, d, |Sigma|).
double large_mu_bound(double mu, double queries, unsigned d, double sigma_size, double delta);

/// (3 - 2/|Sigma|) / |Sigma|: one-round survival of a four-key zero-set.
double survival_one_round_probability(double sigma_size);
double survival_rounds_probability(double sigma_size, unsigned rounds);

/// Expected linear-probing insertion cost at fill 1 - eps: (1 + 1/eps^2) / 2.
double knuth_probe_length(double load);

/// Comparison set size for the fully random baseline:
/// (1 + 15 sqrt(ln(1/delta)/|Sigma|)) n.
double dominance_baseline_size(double n, double sigma_size, double delta);

}  // namespace tornado
