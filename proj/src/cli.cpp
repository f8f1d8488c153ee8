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

#include "tornado/cli.hpp"

#include <bit>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tornado/bench.hpp"
#include "tornado/bounds.hpp"
#include "tornado/experiments.hpp"
#include "tornado/folded.hpp"
#include "tornado/linprobe.hpp"
#include "tornado/report.hpp"
#include "tornado/selectors.hpp"
#include "tornado/tornado_hash.hpp"

namespace tornado::cli {

namespace {

const std::vector<std::string> kSubcommands = {"independence", "lowerbound", "survival",
                                               "chaining",     "chernoff",   "probing",
                                               "bench",        "selftest",   "dump-tables"};

std::string hex(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%" PRIx64, v);
    return buf;
}

std::uint64_t parse_u64(const std::string& text) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(text, &used, 0);
    } catch (const std::exception&) {
        throw ConfigError("not an unsigned integer: " + text);
    }
    if (used != text.size()) throw ConfigError("not an unsigned integer: " + text);
    return v;
}

RunConfig defaults_for(const std::string& sub) {
    RunConfig cfg;
    cfg.subcommand = sub;
    if (sub == "independence") {
        cfg.n = 128;
    } else if (sub == "lowerbound") {
        cfg.spec = {4, 2, 3, 32, Variant::Tornado, 0};
    } else if (sub == "survival") {
        cfg.spec = {4, 2, 1, 32, Variant::SimpleTornado, 0};
    } else if (sub == "chaining") {
        cfg.spec.out_bits = 8;
    } else if (sub == "chernoff") {
        cfg.spec.out_bits = 6;
        cfg.n = 4096;
    } else if (sub == "probing") {
        cfg.spec = {16, 2, 4, 32, Variant::Tornado, 0};
        cfg.n = 3 << 14;
        cfg.trials = 64;
        cfg.delta = 0.1;
    } else if (sub == "bench") {
        cfg.n = 1 << 20;
    }
    return cfg;
}

struct Flags {
    std::optional<unsigned> sigma_bits, c, d, out_bits, psi_bits, reps;
    std::optional<std::string> variant, spec, seed, config;
    std::optional<std::uint64_t> trials, n, m, queries;
    std::optional<double> delta;
    std::vector<unsigned> k;
    std::optional<std::string> scheme, format, output, histogram, selector;
};

void add_flags(CLI::App& app, Flags& f) {
    app.add_option("--config", f.config, "RunConfig JSON file; later flags override it");
    app.add_option("--spec", f.spec, "spec string, e.g. variant=tornado,sigma=8,c=4,d=4,r=24");
    app.add_option("--sigma-bits", f.sigma_bits, "bits per input character");
    app.add_option("--c", f.c, "input characters per key");
    app.add_option("--d", f.d, "derived characters");
    app.add_option("--out-bits", f.out_bits, "hash output bits");
    app.add_option("--psi-bits", f.psi_bits, "tail alphabet bits (tornado-mix)");
    app.add_option("--variant", f.variant, "simple-tabulation|simple-tornado|tornado|tornado-mix");
    app.add_option("--trials", f.trials, "independent hash functions (seeds)");
    app.add_option("--n,--set-size", f.n, "keys in the experiment");
    app.add_option("--m", f.m, "linear probing table size");
    app.add_option("--delta", f.delta, "tail deviation (chernoff) or dominance delta (probing)");
    app.add_option("--k", f.k, "chaining thresholds")->delimiter(',');
    app.add_option("--queries", f.queries, "fresh query keys per trial");
    app.add_option("--reps", f.reps, "timing repetitions");
    app.add_option("--scheme", f.scheme, "bench scheme or 'all'");
    app.add_option("--seed", f.seed, "master seed (decimal or 0x hex)");
    app.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", f.output, "output file (default stdout)");
    app.add_option("--histogram", f.histogram, "probing: probe-length histogram CSV path");
    app.add_option("--selector", f.selector, "selector JSON file");
}

RunConfig resolve(const std::string& sub, const Flags& f) {
    RunConfig cfg = defaults_for(sub);
    if (f.config) {
        std::ifstream in(*f.config);
        if (!in) throw ConfigError("cannot read config file " + *f.config);
        cfg = config_from_json(nlohmann::json::parse(in));
        cfg.subcommand = sub;
    }
    if (f.spec) cfg.spec = TornadoSpec::parse(*f.spec);
    if (f.sigma_bits) cfg.spec.char_bits = *f.sigma_bits;
    if (f.c) cfg.spec.c = *f.c;
    if (f.d) cfg.spec.d = *f.d;
    if (f.psi_bits) cfg.spec.psi_bits = *f.psi_bits;
    if (f.variant) cfg.spec.variant = parse_variant(*f.variant);
    if (f.trials) cfg.trials = *f.trials;
    if (f.n) cfg.n = *f.n;
    if (f.m) cfg.m = *f.m;
    if (f.delta) cfg.delta = *f.delta;
    if (!f.k.empty()) cfg.k = f.k;
    if (f.queries) cfg.queries = *f.queries;
    if (f.reps) cfg.reps = *f.reps;
    if (f.scheme) cfg.scheme = *f.scheme;
    if (f.seed) cfg.seed = parse_u64(*f.seed);
    if (f.format) cfg.format = *f.format;
    if (f.output) cfg.output = *f.output;
    if (f.histogram) cfg.histogram = *f.histogram;
    if (f.selector) cfg.selector = *f.selector;
    if (f.out_bits) {
        cfg.spec.out_bits = *f.out_bits;
    } else if (sub == "chaining" && !f.config && !f.spec && cfg.n > 0 && std::has_single_bit(cfg.n)) {
        cfg.spec.out_bits = static_cast<unsigned>(std::countr_zero(cfg.n));
    }
    return cfg;
}

Selector load_selector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read selector file " + path);
    return selector_from_json(nlohmann::json::parse(in));
}

void write_reports(std::ostream& os, const RunConfig& cfg, std::span<const ExperimentReport> reports) {
    if (cfg.format == "csv") write_csv(os, reports);
    else write_json(os, reports);
}

ExperimentReport pass_fail(const char* name, bool ok, double estimate, double bound) {
    ExperimentReport r;
    r.name = name;
    r.estimate = estimate;
    r.bound = bound;
    r.verdict = ok ? Verdict::WithinBound : Verdict::Violation;
    return r;
}

std::vector<ExperimentReport> selftest(std::uint64_t seed) {
    std::vector<ExperimentReport> out;

    // Exact uniformity over Sigma = [4], two positions, R = [4].
    const PositionLayout layout = PositionLayout::uniform(2, 2);
    auto gk = [&](Key x) { return genkey_from_key(x, layout); };
    const std::vector<GenKey> independent{gk(0x0), gk(0x1), gk(0x4)};
    const std::vector<GenKey> zero{gk(0x0), gk(0x1), gk(0x4), gk(0x5)};
    const UniformityResult u = exact_uniformity(2, 2, 2, independent);
    const bool zero_uniform = exact_uniformity_check(2, 2, 2, zero);
    ExperimentReport uni = pass_fail("selftest-uniformity", u.uniform && !zero_uniform,
                                     static_cast<double>(u.min_count), static_cast<double>(u.max_count));
    uni.params["fillings"] = u.fillings;
    uni.params["zero_set_uniform"] = zero_uniform;
    out.push_back(uni);

    // Folded evaluation against the reference path.
    std::uint64_t mismatches = 0, checked = 0;
    const TornadoSpec profiles[] = {{8, 4, 3, 32, Variant::Tornado, 0},
                                    {8, 4, 4, 24, Variant::Tornado, 0},
                                    {8, 8, 5, 64, Variant::TornadoMix, 16}};
    for (const auto& spec : profiles) {
        for (std::uint64_t s = 0; s < 2; ++s) {
            const TornadoHash h = TornadoHash::build(spec, trial_seed(seed, s));
            const FoldedTables f = fold_tables(h);
            SplitMix64 rng(mix64(seed + s));
            for (int i = 0; i < 2000; ++i, ++checked) {
                const Key x = rng.next() & low_mask(spec.key_bits());
                mismatches += f.eval(x) != h.eval(x);
            }
        }
    }
    ExperimentReport folded = pass_fail("selftest-folded", mismatches == 0, static_cast<double>(mismatches), 0);
    folded.params["checked"] = checked;
    out.push_back(folded);

    // Twist bijectivity on the full 16-bit universe.
    std::vector<Key> all(1 << 16);
    for (Key x = 0; x < all.size(); ++x) all[x] = x;
    bool injective = true;
    for (std::uint64_t s = 0; s < 4; ++s)
        injective &= derived_injectivity_check(
            TornadoHash::build({8, 2, 2, 16, Variant::Tornado, 0}, trial_seed(seed, s)), all);
    out.push_back(pass_fail("selftest-injectivity", injective, injective ? 1 : 0, 1));

    // One-round survival by enumeration at |Sigma| = 4.
    const auto ys = four_key_zero_set(1, 2, 2);
    const ExactSurvival ex = exact_one_round_survival(2, 2, ys);
    const double expected = survival_one_round_probability(4);
    ExperimentReport surv = pass_fail("selftest-survival-exact", ex.rate() == expected, ex.rate(), expected);
    surv.params["surviving"] = ex.surviving;
    surv.params["total"] = ex.total;
    out.push_back(surv);

    for (auto& r : out) r.seed = seed;
    return out;
}

int run_bench(const RunConfig& cfg, std::ostream& os) {
    std::vector<BenchResult> results;
    if (cfg.scheme == "all") {
        for (auto s : kBenchSchemes) results.push_back(throughput(s, cfg.n, cfg.reps, cfg.seed));
    } else {
        results.push_back(throughput(cfg.scheme, cfg.n, cfg.reps, cfg.seed));
    }
    if (cfg.format == "csv") {
        write_bench_csv(os, results);
    } else {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : results) {
            arr.push_back({{"scheme", r.scheme},
                           {"n_keys", r.n_keys},
                           {"reps", r.reps},
                           {"ns_per_key", r.ns_per_key},
                           {"checksum", hex(r.checksum)},
                           {"checksum_stable", r.checksum_stable}});
        }
        os << arr.dump(2) << '\n';
    }
    for (const auto& r : results)
        if (!r.checksum_stable) return kExitError;
    return kExitOk;
}

int run_dump(const RunConfig& cfg, std::ostream& os) {
    const TornadoHash h = TornadoHash::build(cfg.spec, cfg.seed);
    if (cfg.format == "csv") {
        h.dump(os);
        return kExitOk;
    }
    nlohmann::ordered_json j;
    j["header"] = dump_header(cfg.spec, cfg.seed);
    j["spec"] = cfg.spec.to_string();
    j["seed"] = hex(cfg.seed);
    auto& entries = j["entries"] = nlohmann::ordered_json::array();
    char buf[24];
    for (std::uint64_t e : h.entries()) {
        std::snprintf(buf, sizeof buf, "%" PRIx64, e);
        entries.push_back(buf);
    }
    os << j.dump(2) << '\n';
    return kExitOk;
}

int dispatch(const RunConfig& cfg, std::ostream& os) {
    const std::string& sub = cfg.subcommand;
    if (sub == "bench") return run_bench(cfg, os);
    if (sub == "dump-tables") return run_dump(cfg, os);

    std::vector<ExperimentReport> reports;
    if (sub == "independence") {
        const Selector sel = cfg.selector.empty()
                                 ? Selector::fixed_set(random_distinct_keys(cfg.n, cfg.spec.key_bits(), cfg.seed))
                                 : load_selector(cfg.selector);
        reports.push_back(measure_dependence(sel, cfg.spec, cfg.trials, cfg.seed));
    } else if (sub == "lowerbound") {
        reports.push_back(measure_lower_bound(cfg.spec, cfg.trials, cfg.seed));
    } else if (sub == "survival") {
        const auto ys = four_key_zero_set(1, 2, cfg.spec.char_bits);
        reports.push_back(survival_d_rounds(cfg.spec, ys, cfg.trials, cfg.seed));
    } else if (sub == "chaining") {
        reports = chaining_tail(cfg.spec, cfg.n, cfg.k, cfg.trials, cfg.seed);
    } else if (sub == "chernoff") {
        const Selector sel =
            cfg.selector.empty()
                ? Selector::fixed_bin(random_distinct_keys(cfg.n, cfg.spec.key_bits(), cfg.seed),
                                      cfg.spec.out_bits, 0)
                : load_selector(cfg.selector);
        if (mu(sel) > mu_limit(cfg.spec))
            reports.push_back(large_mu_tail(sel, cfg.spec, cfg.delta, cfg.trials, cfg.seed));
        else
            reports.push_back(chernoff_tail(sel, cfg.spec, cfg.delta, cfg.trials, cfg.seed));
    } else if (sub == "probing") {
        ProbeConfig pc;
        pc.spec = cfg.spec;
        pc.n = cfg.n;
        pc.m = cfg.m;
        pc.queries = cfg.queries;
        pc.trials = cfg.trials;
        pc.seed = cfg.seed;
        pc.dominance_delta = cfg.delta;
        const ProbeExperimentResult res = probe_experiment(pc);
        reports = probe_reports(pc, res);
        if (!cfg.histogram.empty()) {
            std::ofstream hist(cfg.histogram);
            if (!hist) throw ConfigError("cannot write " + cfg.histogram);
            write_histogram_csv(hist, res.histogram);
        }
    } else if (sub == "selftest") {
        reports = selftest(cfg.seed);
    } else {
        throw ConfigError("unknown subcommand " + sub);
    }
    write_reports(os, cfg, reports);
    return any_violation(reports) ? kExitViolation : kExitOk;
}

}  // namespace

nlohmann::ordered_json to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["subcommand"] = cfg.subcommand;
    j["spec"] = {{"char_bits", cfg.spec.char_bits},
                 {"c", cfg.spec.c},
                 {"d", cfg.spec.d},
                 {"out_bits", cfg.spec.out_bits},
                 {"variant", std::string(tornado::to_string(cfg.spec.variant))},
                 {"psi_bits", cfg.spec.psi_bits}};
    j["trials"] = cfg.trials;
    j["n"] = cfg.n;
    j["m"] = cfg.m;
    j["delta"] = cfg.delta;
    j["k"] = cfg.k;
    j["queries"] = cfg.queries;
    j["reps"] = cfg.reps;
    j["scheme"] = cfg.scheme;
    j["seed"] = hex(cfg.seed);
    j["format"] = cfg.format;
    j["output"] = cfg.output;
    j["histogram"] = cfg.histogram;
    j["selector"] = cfg.selector;
    return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
    try {
        RunConfig cfg;
        cfg.subcommand = j.value("subcommand", std::string{});
        if (j.contains("spec")) {
            const auto& s = j.at("spec");
            cfg.spec.char_bits = s.at("char_bits").get<unsigned>();
            cfg.spec.c = s.at("c").get<unsigned>();
            cfg.spec.d = s.at("d").get<unsigned>();
            cfg.spec.out_bits = s.at("out_bits").get<unsigned>();
            cfg.spec.variant = parse_variant(s.at("variant").get<std::string>());
            cfg.spec.psi_bits = s.value("psi_bits", 0u);
        }
        cfg.trials = j.value("trials", cfg.trials);
        cfg.n = j.value("n", cfg.n);
        cfg.m = j.value("m", cfg.m);
        cfg.delta = j.value("delta", cfg.delta);
        cfg.k = j.value("k", cfg.k);
        cfg.queries = j.value("queries", cfg.queries);
        cfg.reps = j.value("reps", cfg.reps);
        cfg.scheme = j.value("scheme", cfg.scheme);
        if (j.contains("seed")) {
            const auto& s = j.at("seed");
            cfg.seed = s.is_string() ? parse_u64(s.get<std::string>()) : s.get<std::uint64_t>();
        }
        cfg.format = j.value("format", cfg.format);
        cfg.output = j.value("output", cfg.output);
        cfg.histogram = j.value("histogram", cfg.histogram);
        cfg.selector = j.value("selector", cfg.selector);
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad run config: ") + e.what());
    }
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("format must be csv or json");
        if (cfg.output.empty()) return dispatch(cfg, out);
        std::ostringstream buf;
        const int code = dispatch(cfg, buf);
        std::ofstream file(cfg.output, std::ios::binary);
        if (!file) throw ConfigError("cannot write " + cfg.output);
        file << buf.str();
        file.flush();
        if (!file) throw ConfigError("write failed: " + cfg.output);
        return code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tabulation hashing experiments and conformance tools", "tornado"};
    app.require_subcommand(1);
    std::vector<Flags> flags(kSubcommands.size());
    for (std::size_t i = 0; i < kSubcommands.size(); ++i)
        add_flags(*app.add_subcommand(kSubcommands[i]), flags[i]);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    for (std::size_t i = 0; i < kSubcommands.size(); ++i) {
        if (!app.got_subcommand(kSubcommands[i])) continue;
        RunConfig cfg;
        try {
            cfg = resolve(kSubcommands[i], flags[i]);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kExitError;
        }
        return execute(cfg, out, err);
    }
    return kExitError;
}

}  // namespace tornado::cli
