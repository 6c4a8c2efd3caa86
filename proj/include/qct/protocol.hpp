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

#ifndef QCT_PROTOCOL_HPP
#define QCT_PROTOCOL_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qct/bell.hpp"
#include "qct/matching.hpp"
#include "qct/rng.hpp"

namespace qct {

/// Per-measurement reliability: a Bell measurement reports the true outcome with probability
/// gamma, otherwise one of the three other labels uniformly.
struct NoiseModel {
    double gamma = 1.0;

    void validate() const {
        if (!(gamma > 0.0 && gamma <= 1.0)) {
            throw Error(ErrorCode::InvalidConfig, "gamma must lie in (0, 1], got " + std::to_string(gamma));
        }
    }
};

struct SessionConfig {
    uint32_t n_pairs = 1;
    uint64_t seed = 0;
    std::optional<NoiseModel> noise;

    void validate() const {
        if (n_pairs < 1) {
            throw Error(ErrorCode::InvalidConfig, "n_pairs must be at least 1");
        }
        if (noise) {
            noise->validate();
        }
    }
};

/// Transmission order: slot s of a particle batch carries the odd particle of pair at(s).
/// Pair indices are 0-based.
class Sequence {
   public:
    Sequence() = default;

    explicit Sequence(std::vector<uint32_t> slot_to_pair) : map_(std::move(slot_to_pair)) {
        std::vector<bool> seen(map_.size(), false);
        for (auto p : map_) {
            if (p >= map_.size() || seen[p]) {
                throw Error(ErrorCode::NotAPermutation, "sequence is not a permutation of 0.." +
                                                            std::to_string(map_.size() - 1));
            }
            seen[p] = true;
        }
    }

    static Sequence identity(uint32_t n) {
        std::vector<uint32_t> v(n);
        std::iota(v.begin(), v.end(), 0u);
        return Sequence(std::move(v));
    }

    template <std::uniform_random_bit_generator Rng>
    static Sequence random(uint32_t n, Rng &rng) {
        std::vector<uint32_t> v(n);
        std::iota(v.begin(), v.end(), 0u);
        std::shuffle(v.begin(), v.end(), rng);
        return Sequence(std::move(v));
    }

    /// Uniform over all orders except `excluded`. With a single pair there is no other order and
    /// `excluded` itself is returned.
    template <std::uniform_random_bit_generator Rng>
    static Sequence random_other_than(const Sequence &excluded, Rng &rng) {
        if (excluded.size() < 2) {
            return excluded;
        }
        while (true) {
            auto s = random(excluded.size(), rng);
            if (s != excluded) {
                return s;
            }
        }
    }

    uint32_t size() const { return static_cast<uint32_t>(map_.size()); }
    uint32_t at(uint32_t slot) const { return map_.at(slot); }
    const std::vector<uint32_t> &slots() const { return map_; }

    Sequence inverse() const {
        std::vector<uint32_t> inv(map_.size());
        for (uint32_t s = 0; s < map_.size(); s++) {
            inv[map_[s]] = s;
        }
        return Sequence(std::move(inv));
    }

    bool operator==(const Sequence &) const = default;

   private:
    std::vector<uint32_t> map_;
};

enum class Verdict : uint8_t { Accept, Reject };

inline std::string_view verdict_name(Verdict v) { return v == Verdict::Accept ? "accept" : "reject"; }

struct ParticleBatch {
    Party sender;
    std::vector<ParticleId> particles;
};

struct SequenceAnnouncement {
    Party sender;
    Sequence sequence;
};

struct ResultsAnnouncement {
    Party sender;
    std::vector<BellLabel> results;
};

struct VerdictMessage {
    Party sender;
    Verdict verdict;
};

/// `coin` is empty when the session aborted.
struct CoinAnnouncement {
    Party sender;
    std::optional<bool> coin;
};

using Message = std::variant<ParticleBatch, SequenceAnnouncement, ResultsAnnouncement, VerdictMessage, CoinAnnouncement>;

struct TranscriptEvent {
    enum class Kind : uint8_t { Message, Measurement };
    Kind kind;
    /// Index into messages() for Kind::Message.
    std::size_t message_index;
    /// Who measured, for Kind::Measurement.
    Party party;
};

/// Ordered log of one session. Messages must arrive in the protocol's phase order:
///
///     Alice batch -> Bob batch -> Alice sequence -> Bob results -> Alice verdict -> coin
///
/// Measurement outcomes are local events. Alice may record hers once Bob's batch has arrived; Bob
/// only after the sequence announcement and before announcing results.
class SessionTranscript {
   public:
    explicit SessionTranscript(SessionConfig config) : config_(config) { config_.validate(); }

    void append(Message msg) {
        const std::size_t next = messages_.size();
        const bool ok = std::visit([&](const auto &m) { return admits(next, m); }, msg);
        if (!ok) {
            throw Error(ErrorCode::PhaseOrder, "message out of order at position " + std::to_string(next));
        }
        if (auto *v = std::get_if<VerdictMessage>(&msg)) {
            verdict_ = v->verdict;
        }
        if (auto *c = std::get_if<CoinAnnouncement>(&msg)) {
            coin_ = c->coin;
        }
        messages_.push_back(std::move(msg));
        events_.push_back({TranscriptEvent::Kind::Message, messages_.size() - 1, Party::Alice});
    }

    void record_outcomes(Party who, std::vector<BellLabel> outcomes) {
        if (outcomes.size() != config_.n_pairs) {
            throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(config_.n_pairs) + " outcomes");
        }
        auto &slot = who == Party::Alice ? alice_ : bob_;
        const std::size_t n = messages_.size();
        // Alice: after Bob's batch, before the verdict. Bob: after the sequence, before his results.
        const bool in_window = who == Party::Alice ? (n >= 2 && n <= 4) : n == 3;
        if (slot || !in_window) {
            throw Error(ErrorCode::PhaseOrder, std::string(party_name(who)) + " measurement out of order");
        }
        slot = std::move(outcomes);
        events_.push_back({TranscriptEvent::Kind::Measurement, 0, who});
    }

    const SessionConfig &config() const { return config_; }
    const std::vector<Message> &messages() const { return messages_; }
    /// Messages and measurements interleaved in the order they happened.
    const std::vector<TranscriptEvent> &events() const { return events_; }
    bool complete() const { return messages_.size() == 6; }

    std::span<const BellLabel> alice_outcomes() const { return alice_ ? std::span<const BellLabel>(*alice_) : std::span<const BellLabel>(); }
    std::span<const BellLabel> bob_outcomes() const { return bob_ ? std::span<const BellLabel>(*bob_) : std::span<const BellLabel>(); }

    /// Each party's local coin from its own outcomes.
    bool alice_coin() const { return total_parity(alice_outcomes()); }
    bool bob_coin() const { return total_parity(bob_outcomes()); }

    /// Agreed output; empty means abort (or the session is not finished).
    std::optional<bool> coin() const { return coin_; }
    std::optional<Verdict> verdict() const { return verdict_; }

   private:
    bool admits(std::size_t pos, const ParticleBatch &m) const {
        if (m.particles.size() != config_.n_pairs) {
            return false;
        }
        return (pos == 0 && m.sender == Party::Alice) || (pos == 1 && m.sender == Party::Bob);
    }
    bool admits(std::size_t pos, const SequenceAnnouncement &m) const {
        return pos == 2 && m.sender == Party::Alice && m.sequence.size() == config_.n_pairs;
    }
    bool admits(std::size_t pos, const ResultsAnnouncement &m) const {
        return pos == 3 && m.sender == Party::Bob && m.results.size() == config_.n_pairs && bob_.has_value();
    }
    bool admits(std::size_t pos, const VerdictMessage &m) const {
        return pos == 4 && m.sender == Party::Alice && alice_.has_value();
    }
    bool admits(std::size_t pos, const CoinAnnouncement &m) const {
        if (pos != 5 || !verdict_) {
            return false;
        }
        // An abort marker if and only if verification failed.
        return m.coin.has_value() == (*verdict_ == Verdict::Accept);
    }

    SessionConfig config_;
    std::vector<Message> messages_;
    std::vector<TranscriptEvent> events_;
    std::optional<std::vector<BellLabel>> alice_;
    std::optional<std::vector<BellLabel>> bob_;
    std::optional<Verdict> verdict_;
    std::optional<bool> coin_;
};

/// The coin rule: XOR of outcome parities.
inline bool toss_from_outcomes(std::span<const BellLabel> outcomes) {
    if (outcomes.empty()) {
        throw Error(ErrorCode::EmptyOutcomes, "a toss needs at least one outcome");
    }
    return total_parity(outcomes);
}

/// Accept iff Bob's announced result for pair m equals Alice's own outcome for pair m, for every m.
inline Verdict alice_verify(std::span<const BellLabel> alice_results, std::span<const BellLabel> bob_announced) {
    if (alice_results.size() != bob_announced.size()) {
        throw Error(ErrorCode::LengthMismatch, std::to_string(alice_results.size()) + " vs " +
                                                   std::to_string(bob_announced.size()) + " results");
    }
    return std::equal(alice_results.begin(), alice_results.end(), bob_announced.begin()) ? Verdict::Accept
                                                                                          : Verdict::Reject;
}

/// Consumes no randomness when gamma == 1.
template <std::uniform_random_bit_generator Rng>
BellLabel apply_noise(BellLabel outcome, const NoiseModel &noise, Rng &rng) {
    if (noise.gamma >= 1.0) {
        return outcome;
    }
    if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < noise.gamma) {
        return outcome;
    }
    std::uniform_int_distribution<unsigned> offset(1, 3);
    return outcome ^ BellLabel::from_code(offset(rng));
}

/// All 2N particles of one party, pair m = (2m-1, 2m) in Φ⁺.
inline void add_initial_pairs(EntangledMatching &state, Party owner, uint32_t n_pairs) {
    for (uint32_t m = 0; m < n_pairs; m++) {
        state.add_pair(ParticleId::odd(owner, m), ParticleId::even(owner, m), PHI_PLUS);
    }
}

/// Honest Alice. She sends her odd particles in a secret random order, treats slot m of Bob's
/// batch as his pair-m particle, measures each kept particle 2m against it, and finally checks
/// Bob's announced results index by index.
class HonestAlice {
   public:
    explicit HonestAlice(uint32_t n_pairs) : n_(n_pairs) {}

    template <std::uniform_random_bit_generator Rng>
    ParticleBatch send_batch(Rng &rng) {
        sequence_ = Sequence::random(n_, rng);
        ParticleBatch b{Party::Alice, {}};
        for (uint32_t s = 0; s < n_; s++) {
            b.particles.push_back(ParticleId::odd(Party::Alice, sequence_.at(s)));
        }
        return b;
    }

    void receive_batch(const ParticleBatch &batch) { received_ = batch.particles; }

    SequenceAnnouncement announce_sequence() const { return {Party::Alice, sequence_}; }

    template <std::uniform_random_bit_generator Rng>
    std::vector<BellLabel> measure(EntangledMatching &state, const std::optional<NoiseModel> &noise, Rng &rng) {
        outcomes_.clear();
        for (uint32_t m = 0; m < n_; m++) {
            BellLabel r = state.measure(ParticleId::even(Party::Alice, m), received_.at(m), rng);
            outcomes_.push_back(noise ? apply_noise(r, *noise, rng) : r);
        }
        return outcomes_;
    }

    Verdict verify(const ResultsAnnouncement &bob) const { return alice_verify(outcomes_, bob.results); }

    const Sequence &sequence() const { return sequence_; }
    const std::vector<BellLabel> &outcomes() const { return outcomes_; }

   private:
    uint32_t n_;
    Sequence sequence_;
    std::vector<ParticleId> received_;
    std::vector<BellLabel> outcomes_;
};

/// Honest Bob. He returns his odd particles in the canonical order, waits for Alice's sequence,
/// measures each kept particle 2m against Alice's pair-m particle, and announces everything.
class HonestBob {
   public:
    explicit HonestBob(uint32_t n_pairs) : n_(n_pairs) {}

    void receive_batch(const ParticleBatch &batch) { received_ = batch.particles; }

    ParticleBatch send_batch() const {
        ParticleBatch b{Party::Bob, {}};
        for (uint32_t m = 0; m < n_; m++) {
            b.particles.push_back(ParticleId::odd(Party::Bob, m));
        }
        return b;
    }

    void receive_sequence(const SequenceAnnouncement &a) { pair_to_slot_ = a.sequence.inverse(); }

    template <std::uniform_random_bit_generator Rng>
    std::vector<BellLabel> measure(EntangledMatching &state, const std::optional<NoiseModel> &noise, Rng &rng) {
        outcomes_.clear();
        for (uint32_t m = 0; m < n_; m++) {
            BellLabel r = state.measure(ParticleId::even(Party::Bob, m), received_.at(pair_to_slot_.at(m)), rng);
            outcomes_.push_back(noise ? apply_noise(r, *noise, rng) : r);
        }
        return outcomes_;
    }

    ResultsAnnouncement announce_results() const { return {Party::Bob, outcomes_}; }

   private:
    uint32_t n_;
    std::vector<ParticleId> received_;
    Sequence pair_to_slot_;
    std::vector<BellLabel> outcomes_;
};

/// Closes a session after Alice's check: verdict, then the coin from Bob's announced results, or
/// an abort marker on rejection.
inline void conclude(SessionTranscript &t, Verdict verdict, std::span<const BellLabel> bob_announced) {
    t.append(VerdictMessage{Party::Alice, verdict});
    std::optional<bool> coin;
    if (verdict == Verdict::Accept) {
        coin = total_parity(bob_announced);
    }
    t.append(CoinAnnouncement{Party::Alice, coin});
}

/// One honest session on a shared symbolic state of 2N Φ⁺ pairs.
template <std::uniform_random_bit_generator Rng>
SessionTranscript run_honest(const SessionConfig &config, Rng &rng) {
    SessionTranscript t(config);
    const uint32_t n = config.n_pairs;
    EntangledMatching state;
    add_initial_pairs(state, Party::Alice, n);
    add_initial_pairs(state, Party::Bob, n);

    HonestAlice alice(n);
    HonestBob bob(n);

    auto alice_batch = alice.send_batch(rng);
    t.append(alice_batch);
    bob.receive_batch(alice_batch);

    auto bob_batch = bob.send_batch();
    t.append(bob_batch);
    alice.receive_batch(bob_batch);

    auto seq = alice.announce_sequence();
    t.append(seq);
    bob.receive_sequence(seq);

    t.record_outcomes(Party::Alice, alice.measure(state, config.noise, rng));
    t.record_outcomes(Party::Bob, bob.measure(state, config.noise, rng));

    auto results = bob.announce_results();
    t.append(results);
    conclude(t, alice.verify(results), results.results);
    return t;
}

inline SessionTranscript run_honest(const SessionConfig &config) {
    Rng rng(config.seed);
    return run_honest(config, rng);
}

}  // namespace qct

#endif
