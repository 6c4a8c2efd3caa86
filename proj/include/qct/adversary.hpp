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

#ifndef QCT_ADVERSARY_HPP
#define QCT_ADVERSARY_HPP

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qct/bell.hpp"
#include "qct/matching.hpp"
#include "qct/protocol.hpp"
#include "qct/rng.hpp"
#include "qct/stats.hpp"

namespace qct {

struct HonestKind {
    bool operator==(const HonestKind &) const = default;
};
/// Bob sends Alice's own particles back, optionally with a Pauli on one of them.
struct ReflectKind {
    PauliLabel flip;
    bool operator==(const ReflectKind &) const = default;
};
/// Alice measures early and lies about her send order when she dislikes the coin.
struct FakeSequenceKind {
    bool desired = false;
    bool operator==(const FakeSequenceKind &) const = default;
};

class Strategy {
   public:
    using Kind = std::variant<HonestKind, ReflectKind, FakeSequenceKind>;

    Strategy(Party party, Kind kind) : party_(party), kind_(kind) {
        if (std::holds_alternative<ReflectKind>(kind_) && party_ != Party::Bob) {
            throw Error(ErrorCode::StrategyMismatch, "the reflect attack is only available to Bob");
        }
        if (std::holds_alternative<FakeSequenceKind>(kind_) && party_ != Party::Alice) {
            throw Error(ErrorCode::StrategyMismatch, "the fake-sequence attack is only available to Alice");
        }
    }

    Party party() const { return party_; }
    const Kind &kind() const { return kind_; }

    /// e.g. "bob:reflect(X)", "alice:fake-seq(0)", "alice:honest".
    std::string describe() const {
        std::string out(party_name(party_));
        if (auto *r = std::get_if<ReflectKind>(&kind_)) {
            return out + ":reflect(" + r->flip.symbol() + ")";
        }
        if (auto *f = std::get_if<FakeSequenceKind>(&kind_)) {
            return out + ":fake-seq(" + (f->desired ? "1" : "0") + ")";
        }
        return out + ":honest";
    }

   private:
    Party party_;
    Kind kind_;
};

/// Cycle decomposition of the permutation relating Alice's send order to Bob's claimed
/// identification. Each cycle lists 0-based pair indices starting from its smallest member, in
/// order of increasing smallest member.
struct CycleStructure {
    uint32_t n = 0;
    std::vector<std::vector<uint32_t>> cycles;

    std::size_t count() const { return cycles.size(); }

    std::vector<uint32_t> lengths() const {
        std::vector<uint32_t> out;
        for (const auto &c : cycles) {
            out.push_back(static_cast<uint32_t>(c.size()));
        }
        return out;
    }
};

/// Cycles of `perm`, a permutation of 0..n-1 given as its image list.
inline CycleStructure permutation_cycles(std::span<const uint32_t> perm) {
    CycleStructure out;
    out.n = static_cast<uint32_t>(perm.size());
    std::vector<bool> seen(perm.size(), false);
    for (uint32_t start = 0; start < perm.size(); start++) {
        if (seen[start]) {
            continue;
        }
        std::vector<uint32_t> cyc;
        for (uint32_t j = start; !seen[j]; j = perm[j]) {
            if (perm[j] >= perm.size()) {
                throw Error(ErrorCode::NotAPermutation, "image out of range");
            }
            seen[j] = true;
            cyc.push_back(j);
        }
        if (perm[cyc.back()] != start) {
            throw Error(ErrorCode::NotAPermutation, "image list is not a bijection");
        }
        out.cycles.push_back(std::move(cyc));
    }
    return out;
}

/// Alice's true send order `true_seq` maps slot -> her pair; Bob's `claimed_seq` maps the slot
/// he received a particle in -> the pair index he claims for it when sending it back. Alice then
/// measures her kept particle of pair m against the odd particle of pair
/// tau(m) = true_seq(claimed_seq^-1(m)).
inline CycleStructure cycle_structure(const Sequence &true_seq, const Sequence &claimed_seq) {
    if (true_seq.size() != claimed_seq.size()) {
        throw Error(ErrorCode::SizeMismatch, "sequences of length " + std::to_string(true_seq.size()) + " and " +
                                                 std::to_string(claimed_seq.size()));
    }
    const Sequence claimed_inv = claimed_seq.inverse();
    std::vector<uint32_t> tau(true_seq.size());
    for (uint32_t m = 0; m < tau.size(); m++) {
        tau[m] = true_seq.at(claimed_inv.at(m));
    }
    return permutation_cycles(tau);
}

/// Bob's fabricated results, indexed by pair. Within each cycle Alice's outcomes are uniform over
/// the 4^(n_k - 1) assignments whose XOR equals the XOR of the cycle's pair labels, so Bob samples
/// uniformly from that same set. `pair_labels[m]` is the label of Alice's pair m before she
/// measures.
template <std::uniform_random_bit_generator Rng>
std::vector<BellLabel> best_guess_results(const CycleStructure &cs, std::span<const BellLabel> pair_labels, Rng &rng) {
    if (pair_labels.size() != cs.n) {
        throw Error(ErrorCode::SizeMismatch, "one label per pair required");
    }
    std::vector<BellLabel> out(cs.n, PHI_PLUS);
    std::uniform_int_distribution<unsigned> pick(0, 3);
    for (const auto &cyc : cs.cycles) {
        BellLabel target = PHI_PLUS;
        for (auto m : cyc) {
            target ^= pair_labels[m];
        }
        for (std::size_t i = 0; i + 1 < cyc.size(); i++) {
            out[cyc[i]] = BellLabel::from_code(pick(rng));
            target ^= out[cyc[i]];
        }
        out[cyc.back()] = target;
    }
    return out;
}

/// All pairs in Φ⁺.
template <std::uniform_random_bit_generator Rng>
std::vector<BellLabel> best_guess_results(const CycleStructure &cs, Rng &rng) {
    std::vector<BellLabel> labels(cs.n, PHI_PLUS);
    return best_guess_results(cs, labels, rng);
}

struct ReflectOutcome {
    SessionTranscript transcript;
    CycleStructure cycles;
    bool pass = false;
    /// The coin Alice computes from her own outcomes.
    bool coin = false;
};

/// Bob keeps his own pairs, returns Alice's particles in a random order under identity claims,
/// applies `flip` to one of them, and fabricates results once Alice reveals her order. Bob's
/// measurement record in the transcript holds the fabricated list.
template <std::uniform_random_bit_generator Rng>
ReflectOutcome run_reflect_attack(const SessionConfig &config, PauliLabel flip, Rng &rng) {
    SessionTranscript t(config);
    const uint32_t n = config.n_pairs;
    EntangledMatching state;
    add_initial_pairs(state, Party::Alice, n);
    add_initial_pairs(state, Party::Bob, n);

    HonestAlice alice(n);
    auto alice_batch = alice.send_batch(rng);
    t.append(alice_batch);

    const Sequence claimed = Sequence::random(n, rng);
    ParticleBatch reflected{Party::Bob, std::vector<ParticleId>(n)};
    for (uint32_t s = 0; s < n; s++) {
        reflected.particles[claimed.at(s)] = alice_batch.particles[s];
    }
    uint32_t flipped_slot = 0;
    if (flip != PAULI_I) {
        flipped_slot = std::uniform_int_distribution<uint32_t>(0, n - 1)(rng);
        state.apply_pauli(alice_batch.particles[flipped_slot], flip);
    }
    t.append(reflected);
    alice.receive_batch(reflected);

    auto seq = alice.announce_sequence();
    t.append(seq);

    t.record_outcomes(Party::Alice, alice.measure(state, config.noise, rng));

    CycleStructure cycles = cycle_structure(seq.sequence, claimed);
    std::vector<BellLabel> labels(n, PHI_PLUS);
    if (flip != PAULI_I) {
        labels[seq.sequence.at(flipped_slot)] = flip.as_bell_offset();
    }
    auto fabricated = best_guess_results(cycles, labels, rng);
    t.record_outcomes(Party::Bob, fabricated);

    ResultsAnnouncement results{Party::Bob, fabricated};
    t.append(results);
    Verdict v = alice.verify(results);
    conclude(t, v, results.results);

    return {std::move(t), std::move(cycles), v == Verdict::Accept, total_parity(alice.outcomes())};
}

struct FakeSequenceOutcome {
    SessionTranscript transcript;
    bool alice_coin = false;
    bool bob_coin = false;
    /// Whether Alice announced an order other than the one she used.
    bool lied = false;
};

/// Alice measures as soon as Bob's particles arrive; if her coin is not `desired` she announces
/// a uniformly random different order. Bob stays honest.
template <std::uniform_random_bit_generator Rng>
FakeSequenceOutcome run_fake_sequence_attack(const SessionConfig &config, bool desired, Rng &rng) {
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

    t.record_outcomes(Party::Alice, alice.measure(state, config.noise, rng));
    const bool alice_coin = total_parity(alice.outcomes());

    SequenceAnnouncement seq{Party::Alice, alice.sequence()};
    if (alice_coin != desired) {
        seq.sequence = Sequence::random_other_than(alice.sequence(), rng);
    }
    const bool lied = seq.sequence != alice.sequence();
    t.append(seq);
    bob.receive_sequence(seq);

    t.record_outcomes(Party::Bob, bob.measure(state, config.noise, rng));
    auto results = bob.announce_results();
    t.append(results);
    conclude(t, alice.verify(results), results.results);

    const bool bob_coin = t.bob_coin();
    return {std::move(t), alice_coin, bob_coin, lied};
}

struct ExperimentReport {
    uint64_t trials = 0;
    uint64_t successes = 0;
    double estimate = 0;
    double ci_low = 0;
    double ci_high = 1;
    /// Fraction of trials in which the cheater obtained the coin value they wanted.
    double forced_coin_rate = 0;
    /// Trials that broke an exact invariant of the attack (coin not forced for reflect, unequal
    /// party parities for fake-seq). Always zero unless something is wrong.
    uint64_t invariant_violations = 0;
    uint64_t seed = 0;
    uint32_t n_pairs = 0;
    std::string strategy;
};

inline ExperimentReport make_report(const SessionConfig &config, const Strategy &strategy, uint64_t trials,
                                    uint64_t successes, uint64_t forced, uint64_t violations) {
    ExperimentReport r;
    r.trials = trials;
    r.successes = successes;
    r.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    auto ci = stats::wilson_interval(successes, trials);
    r.ci_low = ci.low;
    r.ci_high = ci.high;
    r.forced_coin_rate = static_cast<double>(forced) / static_cast<double>(trials);
    r.invariant_violations = violations;
    r.seed = config.seed;
    r.n_pairs = config.n_pairs;
    r.strategy = strategy.describe();
    return r;
}

/// Pass rate of the reflect attack over `trials` independent sessions; trial i draws from
/// stream_rng(config.seed, i).
inline ExperimentReport estimate_pass_probability(const SessionConfig &config, uint64_t trials,
                                                  PauliLabel flip = PAULI_I) {
    config.validate();
    if (trials < 1) {
        throw Error(ErrorCode::InvalidConfig, "trials must be at least 1");
    }
    uint64_t passes = 0;
    uint64_t forced = 0;
    for (uint64_t i = 0; i < trials; i++) {
        Rng rng = stream_rng(config.seed, i);
        auto r = run_reflect_attack(config, flip, rng);
        passes += r.pass;
        forced += r.coin == parity(flip);
    }
    return make_report(config, Strategy(Party::Bob, ReflectKind{flip}), trials, passes, forced, trials - forced);
}

/// Frequency with which Bob's coin equals Alice's desired value under the fake-sequence attack.
inline ExperimentReport estimate_fake_sequence(const SessionConfig &config, uint64_t trials, bool desired) {
    config.validate();
    if (trials < 1) {
        throw Error(ErrorCode::InvalidConfig, "trials must be at least 1");
    }
    uint64_t hits = 0;
    uint64_t violations = 0;
    for (uint64_t i = 0; i < trials; i++) {
        Rng rng = stream_rng(config.seed, i);
        auto r = run_fake_sequence_attack(config, desired, rng);
        hits += r.bob_coin == desired;
        violations += r.bob_coin != r.alice_coin;
    }
    return make_report(config, Strategy(Party::Alice, FakeSequenceKind{desired}), trials, hits, hits, violations);
}

}  // namespace qct

#endif
