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

#include "qct/statevector.hpp"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "qct/rng.hpp"
#include "qct/verify.hpp"

using namespace qct;
using namespace qct::oracle;

namespace {

const double S = 1 / std::sqrt(2.0);

void expect_dist(const OutcomeDistribution &d, std::array<double, 4> want) {
    for (int k = 0; k < 4; k++) {
        EXPECT_NEAR(d.p[k], want[k], 1e-12) << "label code " << k;
    }
}

}  // namespace

TEST(Statevector, PreparePairs) {
    auto phi = prepare_pairs({PHI_PLUS});
    ASSERT_EQ(phi.amplitudes().size(), 4u);
    EXPECT_NEAR(phi.amplitudes()[0].real(), S, 1e-15);
    EXPECT_NEAR(std::abs(phi.amplitudes()[1]), 0, 1e-15);
    EXPECT_NEAR(std::abs(phi.amplitudes()[2]), 0, 1e-15);
    EXPECT_NEAR(phi.amplitudes()[3].real(), S, 1e-15);

    auto psi = prepare_pairs({PSI_MINUS});
    EXPECT_NEAR(std::abs(psi.amplitudes()[0]), 0, 1e-15);
    EXPECT_NEAR(psi.amplitudes()[1].real(), S, 1e-15);
    EXPECT_NEAR(psi.amplitudes()[2].real(), -S, 1e-15);
    EXPECT_NEAR(std::abs(psi.amplitudes()[3]), 0, 1e-15);

    auto two = prepare_pairs({PHI_PLUS, PHI_PLUS});
    EXPECT_EQ(two.qubit_count(), 4u);
    EXPECT_EQ(two.amplitudes().size(), 16u);
    EXPECT_NEAR(two.norm_squared(), 1, NORM_TOLERANCE);
    // |0000>, |0011>, |1100>, |1111> each 1/2.
    for (std::size_t i : {0u, 3u, 12u, 15u}) {
        EXPECT_NEAR(two.amplitudes()[i].real(), 0.5, 1e-15);
    }
}

TEST(Statevector, TooManyQubits) {
    std::vector<BellLabel> nine(9, PHI_PLUS);
    EXPECT_THROW(prepare_pairs(nine), Error);
    std::vector<BellLabel> eight(8, PHI_PLUS);
    EXPECT_EQ(prepare_pairs(eight).qubit_count(), 16u);
}

TEST(Statevector, BellDistribution) {
    expect_dist(bell_distribution(prepare_pairs({PHI_PLUS}), 0, 1), {1, 0, 0, 0});
    // Cross-pair measurement on the middle qubits (2 and 3 in 1-based numbering).
    expect_dist(bell_distribution(prepare_pairs({PHI_PLUS, PHI_PLUS}), 1, 2), {0.25, 0.25, 0.25, 0.25});
    expect_dist(bell_distribution(prepare_pairs({PSI_MINUS, PHI_MINUS}), 1, 2), {0.25, 0.25, 0.25, 0.25});
    // Ψ⁻ is antisymmetric, but the measurement order of its qubits does not change probabilities.
    expect_dist(bell_distribution(prepare_pairs({PSI_MINUS}), 1, 0), {0, 0, 0, 1});
}

TEST(Statevector, IndexErrors) {
    auto s = prepare_pairs({PHI_PLUS});
    try {
        bell_distribution(s, 0, 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
    }
    try {
        bell_distribution(s, 1, 1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::CoincidentIndices);
    }
}

TEST(Statevector, CollapseOnEigenstate) {
    Rng rng(3);
    auto s = prepare_pairs({PHI_PLUS});
    auto [m, after] = bell_measure_collapse(s, 0, 1, rng);
    EXPECT_EQ(m, PHI_PLUS);
    for (std::size_t i = 0; i < 4; i++) {
        EXPECT_NEAR(std::abs(after.amplitudes()[i] - s.amplitudes()[i]), 0, 1e-12);
    }
}

TEST(Statevector, SwappingLeavesSameLabelOnOuterQubits) {
    Rng rng(4);
    for (int i = 0; i < 200; i++) {
        auto [m, after] = bell_measure_collapse(prepare_pairs({PHI_PLUS, PHI_PLUS}), 1, 2, rng);
        EXPECT_NEAR(after.norm_squared(), 1, NORM_TOLERANCE);
        auto d = bell_distribution(after, 0, 3);
        EXPECT_NEAR(d[m], 1, 1e-12);
    }
}

TEST(Statevector, PsiMinusPhiMinusResidual) {
    auto s = prepare_pairs({PSI_MINUS, PHI_MINUS});
    EXPECT_NEAR(project_bell(s, 1, 2, PHI_PLUS), 0.25, 1e-12);
    expect_dist(bell_distribution(s, 0, 3), {0, 0, 1, 0});
}

TEST(Statevector, CollapseNeverPicksZeroBranch) {
    Rng rng(5);
    for (int i = 0; i < 1000; i++) {
        auto [m, after] = bell_measure_collapse(prepare_pairs({PSI_PLUS, PHI_PLUS}), 0, 1, rng);
        EXPECT_EQ(m, PSI_PLUS);
    }
}

// Residual rule b1 ^ b2 ^ m against the Born rule for all 64 cases.
TEST(Statevector, ResidualRuleTable) {
    auto r = verify::check_residual_table();
    EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Statevector, ResidualRuleTableRejectsWrongRule) {
    auto r = verify::check_residual_table([](BellLabel a, BellLabel b, BellLabel) { return a ^ b; });
    EXPECT_FALSE(r.passed);
}

TEST(Statevector, EngineMatchesOracleExactly) {
    auto r = verify::check_exact_distributions();
    EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Statevector, LemmaOnOracle) {
    auto r = verify::check_lemma(4, 200, 11);
    EXPECT_TRUE(r.passed) << r.detail;
}
