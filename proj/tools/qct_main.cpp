// Copyright 2026 The QCT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qct: batch front end for the coin-tossing simulator.
//
//   qct toss    --n-pairs N [--gamma G] [--seed S] [--out transcript.jsonl]
//   qct cheat   --strategy {reflect,fake-seq} [--flip P | --desired B] --n-pairs N --trials T
//   qct analyze --n-pairs NMAX [--p-threshold P]
//   qct verify  [--trials T] [--samples S]
//
// Exit codes: 0 success, 2 invalid configuration, 3 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qct/qct.hpp"

namespace {

constexpr int EXIT_INVALID = 2;
constexpr int EXIT_VERIFY_FAILED = 3;

struct RunConfig {
    uint32_t n_pairs = 0;  // 0 = command default
    uint64_t trials = 0;   // 0 = command default
    std::optional<uint64_t> seed;
    std::string strategy;
    std::string party;
    std::optional<std::string> flip;
    std::optional<int> desired;
    std::optional<double> gamma;
    double p_threshold = 0.01;
    uint64_t samples = 100000;
    bool inject_fault = false;
    std::string format = "text";
    std::string out_path;
};

uint64_t resolve_seed(const RunConfig &cfg) {
    if (cfg.seed) {
        return *cfg.seed;
    }
    if (const char *env = std::getenv("QCT_SEED")) {
        std::string s(env);
        std::size_t used = 0;
        uint64_t v = 0;
        try {
            v = std::stoull(s, &used, 10);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != s.size()) {
            throw qct::Error(qct::ErrorCode::InvalidConfig, "QCT_SEED is not an unsigned integer: '" + s + "'");
        }
        return v;
    }
    return 0;
}

qct::report::Format resolve_format(const RunConfig &cfg) {
    auto f = qct::report::parse_format(cfg.format);
    if (!f) {
        throw qct::Error(qct::ErrorCode::InvalidConfig, "unknown format '" + cfg.format + "'");
    }
    return *f;
}

/// Writes `body` to --out when given, otherwise to stdout.
void emit(const RunConfig &cfg, const std::string &body) {
    if (cfg.out_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) {
        throw qct::Error(qct::ErrorCode::InvalidConfig, "cannot open '" + cfg.out_path + "' for writing");
    }
    f << body;
}

std::string labels_str(std::span<const qct::BellLabel> labels) {
    std::string s;
    for (auto b : labels) {
        if (!s.empty()) s += ' ';
        s += b.bits();
    }
    return s;
}

int cmd_toss(const RunConfig &rc) {
    qct::SessionConfig config{rc.n_pairs ? rc.n_pairs : 1, resolve_seed(rc), std::nullopt};
    if (rc.gamma) {
        config.noise = qct::NoiseModel{*rc.gamma};
    }
    config.validate();
    const auto format = resolve_format(rc);
    auto t = qct::run_honest(config);

    const std::string coin = t.coin() ? std::to_string(*t.coin() ? 1 : 0) : "abort";
    const std::string verdict(qct::verdict_name(*t.verdict()));
    std::ostringstream out;
    switch (format) {
        case qct::report::Format::Text:
            out << "coin: " << coin << "\nverdict: " << verdict << "\n";
            out << "alice outcomes: " << labels_str(t.alice_outcomes()) << "\n";
            out << "bob outcomes:   " << labels_str(t.bob_outcomes()) << "\n";
            break;
        case qct::report::Format::Json: {
            qct::report::Json j = qct::report::Json::object();
            j["n_pairs"] = config.n_pairs;
            j["seed"] = config.seed;
            if (t.coin()) {
                j["coin"] = *t.coin() ? 1 : 0;
            } else {
                j["coin"] = "abort";
            }
            j["verdict"] = verdict;
            j["alice_outcomes"] = qct::io::detail::labels_json(t.alice_outcomes());
            j["bob_outcomes"] = qct::io::detail::labels_json(t.bob_outcomes());
            out << j.dump(2) << "\n";
            break;
        }
        case qct::report::Format::Csv:
            out << "n_pairs,seed,coin,verdict,alice_outcomes,bob_outcomes\n";
            out << config.n_pairs << "," << config.seed << "," << coin << "," << verdict << ","
                << labels_str(t.alice_outcomes()) << "," << labels_str(t.bob_outcomes()) << "\n";
            break;
    }
    std::cout << out.str();
    if (!rc.out_path.empty()) {
        std::ostringstream transcript;
        qct::io::write_transcript_jsonl(t, transcript);
        emit(rc, transcript.str());
    }
    return 0;
}

int cmd_cheat(const RunConfig &rc) {
    qct::SessionConfig config{rc.n_pairs ? rc.n_pairs : 2, resolve_seed(rc), std::nullopt};
    if (rc.gamma) {
        config.noise = qct::NoiseModel{*rc.gamma};
    }
    config.validate();
    const auto format = resolve_format(rc);
    const uint64_t trials = rc.trials ? rc.trials : 10000;

    std::optional<qct::Party> party;
    if (rc.party == "alice") party = qct::Party::Alice;
    if (rc.party == "bob") party = qct::Party::Bob;

    qct::ExperimentReport report;
    bool pass_experiment = false;
    if (rc.strategy == "reflect") {
        if (rc.desired) {
            throw qct::Error(qct::ErrorCode::StrategyMismatch, "--desired applies to fake-seq, not reflect");
        }
        auto flip = qct::PauliLabel::parse(rc.flip.value_or("I"));
        if (!flip) {
            throw qct::Error(qct::ErrorCode::InvalidConfig, "--flip must be one of I, X, Y, Z");
        }
        qct::Strategy(party.value_or(qct::Party::Bob), qct::ReflectKind{*flip});
        report = qct::estimate_pass_probability(config, trials, *flip);
        pass_experiment = true;
    } else {
        if (rc.flip) {
            throw qct::Error(qct::ErrorCode::StrategyMismatch, "--flip applies to reflect, not fake-seq");
        }
        const bool desired = rc.desired.value_or(0) != 0;
        qct::Strategy(party.value_or(qct::Party::Alice), qct::FakeSequenceKind{desired});
        report = qct::estimate_fake_sequence(config, trials, desired);
    }
    std::ostringstream out;
    qct::report::write_experiment(report, pass_experiment, format, out);
    emit(rc, out.str());
    return 0;
}

int cmd_analyze(const RunConfig &rc) {
    const auto format = resolve_format(rc);
    const uint32_t n_max = rc.n_pairs ? rc.n_pairs : 11;
    std::ostringstream out;
    qct::report::write_rows(qct::report::analyze_rows(n_max, rc.p_threshold), format, out);
    emit(rc, out.str());
    return 0;
}

int cmd_verify(const RunConfig &rc) {
    const auto format = resolve_format(rc);
    qct::verify::VerifyOptions opt;
    opt.seed = resolve_seed(rc);
    opt.lemma_trials = static_cast<uint32_t>(rc.trials ? rc.trials : 1000);
    opt.samples = rc.samples;
    if (rc.inject_fault) {
        // Negative control: drops the outcome term from the swapping rule.
        opt.rule = [](qct::BellLabel a, qct::BellLabel b, qct::BellLabel) { return a ^ b; };
    }
    auto results = qct::verify::run_verification(opt);
    bool all = true;
    std::ostringstream out;
    if (format == qct::report::Format::Json) {
        qct::report::Json a = qct::report::Json::array();
        for (const auto &r : results) {
            qct::report::Json j = qct::report::Json::object();
            j["check"] = r.name;
            j["passed"] = r.passed;
            j["detail"] = r.detail;
            a.push_back(std::move(j));
            all = all && r.passed;
        }
        out << a.dump(2) << "\n";
    } else {
        if (format == qct::report::Format::Csv) {
            out << "check,passed,detail\n";
        }
        for (const auto &r : results) {
            if (format == qct::report::Format::Csv) {
                out << r.name << "," << (r.passed ? "true" : "false") << ",\"" << r.detail << "\"\n";
            } else {
                out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
            }
            all = all && r.passed;
        }
    }
    emit(rc, out.str());
    return all ? 0 : EXIT_VERIFY_FAILED;
}

void add_common(CLI::App *cmd, RunConfig &rc) {
    cmd->add_option("--seed", rc.seed, "Master seed (falls back to $QCT_SEED, then 0)");
    cmd->add_option("--format", rc.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", rc.out_path, "Output path");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum coin tossing via entanglement swapping: simulator and analysis"};
    app.require_subcommand(1);
    RunConfig rc;

    auto *toss = app.add_subcommand("toss", "Run one honest session; --out writes the transcript (JSON lines)");
    toss->add_option("--n-pairs", rc.n_pairs, "Entangled pairs per party")->check(CLI::PositiveNumber);
    toss->add_option("--gamma", rc.gamma, "Per-measurement probability of a correct outcome");
    add_common(toss, rc);

    auto *cheat = app.add_subcommand("cheat", "Monte Carlo run of a cheating strategy");
    cheat->add_option("--n-pairs", rc.n_pairs, "Entangled pairs per party")->check(CLI::PositiveNumber);
    cheat->add_option("--trials", rc.trials, "Independent sessions")->check(CLI::PositiveNumber);
    cheat->add_option("--strategy", rc.strategy, "Attack")->required()->check(CLI::IsMember({"reflect", "fake-seq"}));
    cheat->add_option("--party", rc.party, "Cheating party (checked against the strategy)")
        ->check(CLI::IsMember({"alice", "bob"}));
    cheat->add_option("--flip", rc.flip, "Pauli Bob applies in the reflect attack")
        ->check(CLI::IsMember({"I", "X", "Y", "Z"}));
    cheat->add_option("--desired", rc.desired, "Coin Alice wants in the fake-seq attack")
        ->check(CLI::IsMember({0, 1}));
    cheat->add_option("--gamma", rc.gamma, "Per-measurement probability of a correct outcome");
    add_common(cheat, rc);

    auto *analyze = app.add_subcommand("analyze", "Closed-form pass probabilities and noise bounds for N = 1..n");
    analyze->add_option("--n-pairs", rc.n_pairs, "Largest N")->check(CLI::PositiveNumber);
    analyze->add_option("--p-threshold", rc.p_threshold, "Target pass probability for min-gamma");
    add_common(analyze, rc);

    auto *verify = app.add_subcommand("verify", "Engine versus statevector cross-checks");
    verify->add_option("--trials", rc.trials, "Random measurement sequences per N in the lemma check")
        ->check(CLI::PositiveNumber);
    verify->add_option("--samples", rc.samples, "Samples for distribution checks")->check(CLI::PositiveNumber);
    verify->add_flag("--inject-fault", rc.inject_fault, "Check against a deliberately wrong swapping rule");
    add_common(verify, rc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return EXIT_INVALID;
    }

    try {
        if (*toss) return cmd_toss(rc);
        if (*cheat) return cmd_cheat(rc);
        if (*analyze) return cmd_analyze(rc);
        if (*verify) return cmd_verify(rc);
    } catch (const qct::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INVALID;
    }
    return EXIT_INVALID;
}
