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

#include "qct/protocol.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "qct/rng.hpp"
#include "qct/stats.hpp"

using namespace qct;

namespace {

SessionConfig config(uint32_t n, uint64_t seed, std::optional<double> gamma = std::nullopt) {
    SessionConfig c;
    c.n_pairs = n;
    c.seed = seed;
    if (gamma) c.noise = NoiseModel{*gamma};
    return c;
}

std::vector<BellLabel> to_vec(std::span<const BellLabel> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(Sequence, Basics) {
    auto id = Sequence::identity(3);
    EXPECT_EQ(id.slots(), (std::vector<uint32_t>{0, 1, 2}));
    Sequence s({2, 0, 1});
    EXPECT_EQ(s.inverse().slots(), (std::vector<uint32_t>{1, 2, 0}));
    EXPECT_THROW(Sequence({0, 0, 1}), Error);
    EXPECT_THROW(Sequence({0, 3, 1}), Error);
    Rng rng(1);
    for (int i = 0; i < 100; i++) {
        auto r = Sequence::random(5, rng);
        EXPECT_NE(Sequence::random_other_than(r, rng), r);
    }
}

TEST(Toss, Examples) {
    EXPECT_EQ(toss_from_outcomes(std::vector<BellLabel>{PHI_PLUS, PSI_MINUS}), 0);
    EXPECT_EQ(toss_from_outcomes(std::vector<BellLabel>{PSI_PLUS}), 1);
    EXPECT_EQ(toss_from_outcomes(std::vector<BellLabel>{PHI_MINUS, PSI_PLUS}), 0);
    EXPECT_THROW(toss_from_outcomes(std::vector<BellLabel>{}), Error);
}

TEST(Verify, Examples) {
    std::vector<BellLabel> a{PHI_PLUS, PSI_PLUS};
    std::vector<BellLabel> b{PHI_PLUS, PSI_MINUS};
    EXPECT_EQ(alice_verify(a, a), Verdict::Accept);
    EXPECT_EQ(alice_verify(a, b), Verdict::Reject);
    EXPECT_THROW(alice_verify(a, std::vector<BellLabel>{PHI_PLUS}), Error);
}

TEST(Config, Validation) {
    EXPECT_THROW(SessionTranscript(config(0, 1)), Error);
    EXPECT_THROW(SessionTranscript(config(2, 1, 1.5)), Error);
    EXPECT_THROW(SessionTranscript(config(2, 1, -0.1)), Error);
}

TEST(Honest, SinglePairAgreesAndIsUniform) {
    std::array<uint64_t, 4> counts{};
    for (uint64_t i = 0; i < 40000; i++) {
        auto t = run_honest(config(1, i));
        ASSERT_EQ(t.alice_outcomes().size(), 1u);
        EXPECT_EQ(t.alice_outcomes()[0], t.bob_outcomes()[0]);
        EXPECT_EQ(t.coin(), parity(t.alice_outcomes()[0]));
        counts[t.alice_outcomes()[0].code()]++;
    }
    const std::array<double, 4> uniform{0.25, 0.25, 0.25, 0.25};
    EXPECT_TRUE(stats::chi_square_passes(counts, uniform, 0.001));
}

TEST(Honest, AlwaysAccepts) {
    for (uint64_t seed = 0; seed < 2000; seed++) {
        auto t = run_honest(config(2 + seed % 4, seed));
        ASSERT_TRUE(t.complete());
        EXPECT_EQ(t.verdict(), Verdict::Accept);
        EXPECT_EQ(to_vec(t.alice_outcomes()), to_vec(t.bob_outcomes()));
        EXPECT_EQ(t.alice_coin(), t.bob_coin());
        EXPECT_EQ(t.coin(), t.alice_coin());
    }
}

TEST(Honest, GammaOneMatchesNoiseless) {
    for (uint64_t seed = 0; seed < 50; seed++) {
        auto a = run_honest(config(2, seed));
        auto b = run_honest(config(2, seed, 1.0));
        EXPECT_EQ(to_vec(a.alice_outcomes()), to_vec(b.alice_outcomes()));
        EXPECT_EQ(to_vec(a.bob_outcomes()), to_vec(b.bob_outcomes()));
        EXPECT_EQ(a.coin(), b.coin());
    }
}

TEST(Honest, DeterministicForSeed) {
    auto a = run_honest(config(5, 42));
    auto b = run_honest(config(5, 42));
    EXPECT_EQ(to_vec(a.alice_outcomes()), to_vec(b.alice_outcomes()));
    EXPECT_EQ(std::get<SequenceAnnouncement>(a.messages()[2]).sequence,
              std::get<SequenceAnnouncement>(b.messages()[2]).sequence);
}

TEST(Honest, MessageOrder) {
    auto t = run_honest(config(3, 9));
    ASSERT_EQ(t.messages().size(), 6u);
    EXPECT_TRUE(std::holds_alternative<ParticleBatch>(t.messages()[0]));
    EXPECT_TRUE(std::holds_alternative<ParticleBatch>(t.messages()[1]));
    EXPECT_TRUE(std::holds_alternative<SequenceAnnouncement>(t.messages()[2]));
    EXPECT_TRUE(std::holds_alternative<ResultsAnnouncement>(t.messages()[3]));
    EXPECT_TRUE(std::holds_alternative<VerdictMessage>(t.messages()[4]));
    EXPECT_TRUE(std::holds_alternative<CoinAnnouncement>(t.messages()[5]));
    // Alice's batch carries her odd particles in the announced order.
    const auto &batch = std::get<ParticleBatch>(t.messages()[0]);
    const auto &seq = std::get<SequenceAnnouncement>(t.messages()[2]).sequence;
    for (uint32_t s = 0; s < 3; s++) {
        EXPECT_EQ(batch.particles[s], ParticleId::odd(Party::Alice, seq.at(s)));
    }
    int measurements = 0;
    for (const auto &e : t.events()) measurements += e.kind == TranscriptEvent::Kind::Measurement;
    EXPECT_EQ(measurements, 2);
}

TEST(Transcript, RejectsOutOfOrder) {
    SessionTranscript t(config(1, 0));
    ParticleBatch bob{Party::Bob, {ParticleId::odd(Party::Bob, 0)}};
    ParticleBatch alice{Party::Alice, {ParticleId::odd(Party::Alice, 0)}};
    EXPECT_THROW(t.append(bob), Error);
    t.append(alice);
    EXPECT_THROW(t.record_outcomes(Party::Alice, {PHI_PLUS}), Error);
    EXPECT_THROW(t.append(SequenceAnnouncement{Party::Alice, Sequence::identity(1)}), Error);
    t.append(bob);
    EXPECT_THROW(t.record_outcomes(Party::Bob, {PHI_PLUS}), Error);
    t.append(SequenceAnnouncement{Party::Alice, Sequence::identity(1)});
    EXPECT_THROW(t.append(ResultsAnnouncement{Party::Bob, {PHI_PLUS}}), Error);
    t.record_outcomes(Party::Bob, {PHI_PLUS});
    t.append(ResultsAnnouncement{Party::Bob, {PHI_PLUS}});
    EXPECT_THROW(t.append(VerdictMessage{Party::Alice, Verdict::Accept}), Error);
    t.record_outcomes(Party::Alice, {PHI_PLUS});
    t.append(VerdictMessage{Party::Alice, Verdict::Reject});
    EXPECT_THROW(t.append(CoinAnnouncement{Party::Alice, true}), Error);
    t.append(CoinAnnouncement{Party::Alice, std::nullopt});
    EXPECT_TRUE(t.complete());
    EXPECT_FALSE(t.coin().has_value());
}

TEST(Noise, GammaOneUnchanged) {
    Rng rng(0);
    for (auto b : BellLabel::all()) EXPECT_EQ(apply_noise(b, NoiseModel{1.0}, rng), b);
}

TEST(Noise, QuarterGammaIsUniform) {
    Rng rng(17);
    std::array<uint64_t, 4> counts{};
    for (int i = 0; i < 100000; i++) counts[apply_noise(PSI_PLUS, NoiseModel{0.25}, rng).code()]++;
    const std::array<double, 4> uniform{0.25, 0.25, 0.25, 0.25};
    EXPECT_TRUE(stats::chi_square_passes(counts, uniform, 0.001));
}

TEST(Noise, CorruptionRate) {
    Rng rng(23);
    const int n = 100000;
    int corrupted = 0;
    for (int i = 0; i < n; i++) corrupted += apply_noise(PHI_PLUS, NoiseModel{0.999}, rng) != PHI_PLUS;
    const double sigma = std::sqrt(0.001 * 0.999 / n);
    EXPECT_NEAR(static_cast<double>(corrupted) / n, 0.001, 3 * sigma);
}

TEST(Noise, HeavyNoiseCausesRejections) {
    int rejects = 0;
    for (uint64_t seed = 0; seed < 200; seed++) {
        auto t = run_honest(config(4, seed, 0.5));
        if (t.verdict() == Verdict::Reject) {
            rejects++;
            EXPECT_FALSE(t.coin().has_value());
        }
    }
    EXPECT_GT(rejects, 100);
}
