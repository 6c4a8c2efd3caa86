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

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "qct/report.hpp"
#include "qct/transcript_io.hpp"

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string &args, const std::string &env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + QCT_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
    Run r;
    FILE *p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::filesystem::path temp_file(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("qct_cli_test_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, TossIsDeterministic) {
    auto a = run("toss --n-pairs 4 --seed 7");
    auto b = run("toss --n-pairs 4 --seed 7");
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
}

TEST(Cli, SinglePairToss) {
    auto r = run("toss --n-pairs 1 --seed 1 --format json");
    ASSERT_EQ(r.status, 0);
    auto j = qct::report::Json::parse(r.out);
    EXPECT_EQ(j["verdict"], "accept");
    EXPECT_TRUE(j["coin"] == 0 || j["coin"] == 1);
}

TEST(Cli, NoisyTossSometimesAborts) {
    int aborts = 0;
    for (int seed = 0; seed < 30; seed++) {
        auto r = run("toss --n-pairs 4 --gamma 0.5 --format json --seed " + std::to_string(seed));
        ASSERT_EQ(r.status, 0);
        aborts += qct::report::Json::parse(r.out)["verdict"] == "reject";
    }
    EXPECT_GT(aborts, 0);
}

TEST(Cli, SeedFromEnvironment) {
    auto a = run("toss --n-pairs 5", "QCT_SEED=99");
    auto b = run("toss --n-pairs 5 --seed 99");
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(run("toss", "QCT_SEED=banana").status, 2);
}

TEST(Cli, TranscriptFileReadsBack) {
    auto path = temp_file("transcript.jsonl");
    auto r = run("toss --n-pairs 3 --seed 11 --out " + path.string());
    ASSERT_EQ(r.status, 0);
    std::ifstream in(path);
    auto t = qct::io::read_transcript_jsonl(in);
    EXPECT_TRUE(t.complete());
    EXPECT_EQ(t.config().seed, 11u);
    std::filesystem::remove(path);
}

TEST(Cli, InvalidConfigExitsTwo) {
    EXPECT_EQ(run("toss --n-pairs 0").status, 2);
    EXPECT_EQ(run("toss --gamma 1.5").status, 2);
    EXPECT_EQ(run("cheat --strategy reflect --party alice --trials 10").status, 2);
    EXPECT_EQ(run("cheat --strategy fake-seq --flip X --trials 10").status, 2);
    EXPECT_EQ(run("cheat --strategy teleport").status, 2);
    EXPECT_EQ(run("nonsense").status, 2);
}

TEST(Cli, CheatReportsForcedCoin) {
    auto r = run("cheat --strategy reflect --flip X --n-pairs 3 --trials 2000 --seed 4 --format json");
    ASSERT_EQ(r.status, 0);
    auto j = qct::report::Json::parse(r.out);
    EXPECT_EQ(j["forced_coin_rate"].get<double>(), 1.0);
    EXPECT_EQ(j["strategy"], "bob:reflect(X)");
    EXPECT_TRUE(j["model_discrepancy"].get<bool>());
    auto fake = run("cheat --strategy fake-seq --desired 1 --trials 2000 --seed 4 --format json");
    ASSERT_EQ(fake.status, 0);
    auto f = qct::report::Json::parse(fake.out);
    EXPECT_EQ(f["invariant_violations"], 0);
    EXPECT_NEAR(f["estimate"].get<double>(), 0.5, 0.05);
}

TEST(Cli, CsvAndJsonAgree) {
    auto csv = run("analyze --n-pairs 11 --format csv");
    auto json = run("analyze --n-pairs 11 --format json");
    ASSERT_EQ(csv.status, 0);
    ASSERT_EQ(json.status, 0);
    auto arr = qct::report::Json::parse(json.out);
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    std::size_t i = 0;
    while (std::getline(lines, line)) {
        ASSERT_LT(i, arr.size());
        auto first = line.find(',');
        auto second = line.find(',', first + 1);
        auto third = line.find(',', second + 1);
        EXPECT_EQ(line.substr(first + 1, second - first - 1), arr[i]["model"].get<std::string>());
        const double v = std::stod(line.substr(second + 1, third - second - 1));
        const double w = arr[i]["value"].get<double>();
        EXPECT_LE(std::abs(v - w), 1e-12 * std::abs(w));
        i++;
    }
    EXPECT_EQ(i, arr.size());
}

TEST(Cli, VerifyAndNegativeControl) {
    EXPECT_EQ(run("verify --seed 1 --trials 100").status, 0);
    EXPECT_EQ(run("verify --seed 1 --trials 100 --inject-fault").status, 3);
}

TEST(Cli, OutFileMatchesStdout) {
    auto path = temp_file("analyze.txt");
    auto a = run("analyze --n-pairs 4 --out " + path.string());
    auto b = run("analyze --n-pairs 4");
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(slurp(path), b.out);
    std::filesystem::remove(path);
}
