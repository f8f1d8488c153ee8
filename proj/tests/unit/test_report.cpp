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

#include <cmath>
#include <sstream>

#include "tornado/report.hpp"

using namespace tornado;

TEST_SUITE("report") {

TEST_CASE("binomial proportion") {
    ExperimentReport r;
    set_proportion(r, 25, 100);
    CHECK(r.estimate == 0.25);
    CHECK(r.std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)));
    CHECK(r.trials == 100);
    set_proportion(r, 0, 0);
    CHECK(r.estimate == 0);
    CHECK(r.std_error == 0);
}

TEST_CASE("violation needs four standard errors") {
    CHECK(upper_bound_verdict(0.1, 0.01, 0.07) == Verdict::WithinBound);
    CHECK(upper_bound_verdict(0.1, 0.01, 0.059) == Verdict::Violation);
    CHECK(upper_bound_verdict(0.0, 0.0, 0.0) == Verdict::WithinBound);
    CHECK(upper_bound_verdict(1e-3, 0.0, 0.0) == Verdict::Violation);
}

TEST_CASE("JSON field order") {
    ExperimentReport r;
    r.name = "x";
    r.estimate = 0.5;
    r.std_error = 0.1;
    r.bound = 0.75;
    r.trials = 10;
    r.seed = 0x2a;
    r.params["b"] = 1;
    r.params["a"] = "two";
    r.verdict = Verdict::WithinBound;
    const auto j = to_json(r);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"name", "estimate", "stderr", "bound", "trials", "seed", "params", "verdict"});
    CHECK(j["seed"] == "0x2a");
    CHECK(j["verdict"] == "within-bound");
    CHECK(j["params"].begin().key() == "b");

    std::ostringstream os;
    const ExperimentReport reports[] = {r, r};
    write_json(os, reports);
    const auto parsed = nlohmann::json::parse(os.str());
    CHECK(parsed.is_array());
    CHECK(parsed.size() == 2);
}

TEST_CASE("CSV rows") {
    ExperimentReport r;
    r.name = "chaining";
    r.estimate = 0.25;
    r.bound = 0.5;
    r.trials = 4;
    r.seed = 1;
    r.params["k"] = 4;
    r.params["spec"] = "variant=tornado,sigma=8";
    r.verdict = Verdict::Violation;
    std::ostringstream os;
    const ExperimentReport reports[] = {r};
    write_csv(os, reports);
    CHECK(os.str() ==
          "name,estimate,stderr,bound,trials,seed,verdict,params\n"
          "chaining,0.25,0,0.5,4,0x1,violation,\"k=4;spec=variant=tornado,sigma=8\"\n");
    CHECK(any_violation(reports));
    r.verdict = Verdict::Informational;
    const ExperimentReport ok[] = {r};
    CHECK_FALSE(any_violation(ok));
}

}  // TEST_SUITE
