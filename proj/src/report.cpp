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

#include "tornado/report.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace tornado {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::WithinBound: return "within-bound";
        case Verdict::Violation: return "violation";
        case Verdict::Informational: return "informational";
    }
    return "unknown";
}

double binomial_stderr(double p, std::uint64_t trials) {
    if (trials == 0) return 0.0;
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

Verdict upper_bound_verdict(double estimate, double std_error, double bound) {
    return estimate - 4.0 * std_error > bound ? Verdict::Violation : Verdict::WithinBound;
}

void set_proportion(ExperimentReport& r, std::uint64_t hits, std::uint64_t trials) {
    r.trials = trials;
    r.estimate = trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials);
    r.std_error = binomial_stderr(r.estimate, trials);
}

namespace {

std::string hex(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%" PRIx64, v);
    return buf;
}

// Enough digits to round-trip.
std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_params(const nlohmann::ordered_json& params) {
    std::string out;
    for (const auto& [key, value] : params.items()) {
        if (!out.empty()) out += ';';
        out += key;
        out += '=';
        out += value.is_string() ? value.get<std::string>() : value.dump();
    }
    return out;
}

}  // namespace

nlohmann::ordered_json to_json(const ExperimentReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["estimate"] = r.estimate;
    j["stderr"] = r.std_error;
    j["bound"] = r.bound;
    j["trials"] = r.trials;
    j["seed"] = hex(r.seed);
    j["params"] = r.params;
    j["verdict"] = to_string(r.verdict);
    return j;
}

void write_json(std::ostream& os, std::span<const ExperimentReport> reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    os << arr.dump(2) << '\n';
}

void write_csv(std::ostream& os, std::span<const ExperimentReport> reports) {
    os << "name,estimate,stderr,bound,trials,seed,verdict,params\n";
    for (const auto& r : reports) {
        os << r.name << ',' << number(r.estimate) << ',' << number(r.std_error) << ','
           << number(r.bound) << ',' << r.trials << ',' << hex(r.seed) << ',' << to_string(r.verdict)
           << ",\"" << csv_params(r.params) << "\"\n";
    }
}

bool any_violation(std::span<const ExperimentReport> reports) {
    return std::any_of(reports.begin(), reports.end(),
                       [](const ExperimentReport& r) { return r.verdict == Verdict::Violation; });
}

}  // namespace tornado
