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

#include "qct/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"

using namespace qct;
using namespace qct::analysis;

namespace {

// Average of 4^(cycles - N) over every permutation of N elements.
double brute_force_permutation_model(uint32_t n) {
    std::vector<uint32_t> p(n);
    std::iota(p.begin(), p.end(), 0u);
    double total = 0;
    int count = 0;
    do {
        std::vector<bool> seen(n);
        int cycles = 0;
        for (uint32_t i = 0; i < n; i++) {
            if (seen[i]) continue;
            cycles++;
            for (uint32_t j = i; !seen[j]; j = p[j]) seen[j] = true;
        }
        total += std::pow(4.0, cycles - static_cast<int>(n));
        count++;
    } while (std::next_permutation(p.begin(), p.end()));
    return total / count;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Analysis, ClosedFormModel) {
    EXPECT_EQ(pass_prob_paper(1), 1.0);
    EXPECT_EQ(pass_prob_paper(2), 0.625);
    EXPECT_NEAR(pass_prob_paper(11), 0.0090949470177292824, 1e-15);
    EXPECT_THROW(pass_prob_paper(0), Error);
}

TEST(Analysis, AppendixSumEqualsClosedForm) {
    EXPECT_EQ(pass_prob_appendix_sum(1), 1.0);
    EXPECT_EQ(pass_prob_appendix_sum(2), 0.625);
    for (uint32_t n = 1; n <= 64; n++) {
        EXPECT_LE(rel_err(pass_prob_appendix_sum(n), std::pow(0.625, n - 1)), 1e-12) << n;
    }
    // Exact rational identity for small N.
    for (uint32_t n = 1; n <= 20; n++) {
        Rational want(detail::pow_big(5, n - 1), detail::pow_big(8, n - 1));
        EXPECT_EQ(pass_prob_appendix_sum_exact(n), want) << n;
    }
}

TEST(Analysis, StirlingRows) {
    auto r4 = stirling_first_kind_row(4);
    ASSERT_EQ(r4.size(), 5u);
    EXPECT_EQ(r4[1], 6);
    EXPECT_EQ(r4[2], 11);
    EXPECT_EQ(r4[3], 6);
    EXPECT_EQ(r4[4], 1);
}

TEST(Analysis, PermutationModelMatchesBruteForce) {
    EXPECT_EQ(pass_prob_permutation_model(1), 1.0);
    EXPECT_EQ(pass_prob_permutation_model(2), 0.625);
    EXPECT_EQ(pass_prob_permutation_model(3), 0.3125);
    EXPECT_EQ(pass_prob_permutation_model(4), 0.13671875);
    for (uint32_t n = 1; n <= 8; n++) {
        EXPECT_NEAR(pass_prob_permutation_model(n), brute_force_permutation_model(n), 1e-15) << n;
        const double closed = (n + 1.0) * (n + 2.0) * (n + 3.0) / (6.0 * std::pow(4.0, n));
        EXPECT_NEAR(pass_prob_permutation_model(n), closed, 1e-15) << n;
    }
}

TEST(Analysis, ModelsDivergeFromThree) {
    for (uint32_t n = 3; n <= 12; n++) {
        EXPECT_LT(pass_prob_permutation_model(n), pass_prob_paper(n)) << n;
    }
}

TEST(Analysis, Robustness) {
    EXPECT_TRUE(robustness_ok({1.0, 11}));
    EXPECT_TRUE(robustness_ok({1.0, 1}));
    EXPECT_FALSE(robustness_ok({0.99, 11}));
    EXPECT_TRUE(robustness_ok({0.9992, 11}));
    EXPECT_NEAR(1 - std::pow(0.99, 11), 0.10466, 1e-5);
    EXPECT_NEAR(1 - std::pow(0.9992, 11), 0.0087649, 1e-6);
    EXPECT_THROW(robustness_ok({1.5, 11}), Error);
}

TEST(Analysis, MinGamma) {
    EXPECT_NEAR(min_gamma(11, 0.01), 0.9991, 5e-5);
    EXPECT_NEAR(min_gamma(11, 0.01), std::pow(0.99, 1.0 / 11), 1e-15);
    EXPECT_NEAR(min_gamma(1, 0.5), 0.5, 1e-15);
    EXPECT_NEAR(min_gamma(11, pass_prob_paper(11)), 0.99917, 1e-5);
    EXPECT_THROW(min_gamma(11, 0.0), Error);
    EXPECT_THROW(min_gamma(11, 1.0), Error);
}

// min_gamma at the cheat pass probability sits on the robustness boundary.
TEST(Analysis, MinGammaIsRobustnessBoundary) {
    for (uint32_t n = 1; n <= 30; n++) {
        for (double p : {0.001, 0.01, 0.1, 0.4}) {
            EXPECT_NEAR(1 - std::pow(min_gamma(n, p), n), p, 1e-12);
        }
    }
    for (uint32_t n = 2; n <= 30; n++) {
        const double g = min_gamma(n, pass_prob_paper(n));
        EXPECT_FALSE(robustness_ok({g - 1e-9, n})) << n;
        EXPECT_TRUE(robustness_ok({std::min(1.0, g + 1e-9), n})) << n;
    }
}

TEST(Analysis, MinPairs) {
    EXPECT_EQ(min_n_for_pass_threshold(0.01), 11u);
    EXPECT_EQ(min_n_for_pass_threshold(1.0), 1u);
    EXPECT_EQ(min_n_for_pass_threshold(0.625), 2u);
    EXPECT_EQ(min_n_for_bias({0.005}), 11u);
    EXPECT_THROW(min_n_for_pass_threshold(0.0), Error);
    for (double p : {0.5, 0.1, 0.01, 1e-3, 1e-6}) {
        const auto n = min_n_for_pass_threshold(p);
        EXPECT_LE(pass_prob_paper(n), p);
        if (n > 1) {
            EXPECT_GT(pass_prob_paper(n - 1), p);
        }
    }
}
