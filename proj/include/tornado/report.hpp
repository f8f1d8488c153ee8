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

#include <json.hpp>

namespace tornado {

enum class Verdict { WithinBound, Violation, Informational };

std::string_view to_string(Verdict v);

/// One estimate with its theoretical bound. Field order is the serialized order.
struct ExperimentReport {
    std::string name;
    double estimate = 0.0;
    double std_error = 0.0;
    double bound = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    Verdict verdict = Verdict::Informational;
};

/// sqrt(p (1 - p) / trials).
double binomial_stderr(double p, std::uint64_t trials);

/// Violation only if estimate - 4 stderr exceeds the bound.
Verdict upper_bound_verdict(double estimate, double std_error, double bound);

/// Fills estimate and std_error from a success count.
void set_proportion(ExperimentReport& r, std::uint64_t hits, std::uint64_t trials);

nlohmann::ordered_json to_json(const ExperimentReport& r);

/// Top-level JSON array, one object per report.
void write_json(std::ostream& os, std::span<const ExperimentReport> reports);
/// Header row, then one row per report.
void write_csv(std::ostream& os, std::span<const ExperimentReport> reports);

bool any_violation(std::span<const ExperimentReport> reports);

}  // namespace tornado
