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

#ifndef QCT_VERIFY_HPP
#define QCT_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "qct/format.hpp"
#include "qct/matching.hpp"
#include "qct/protocol.hpp"
#include "qct/rng.hpp"
#include "qct/stats.hpp"
#include "qct/statevector.hpp"

// Cross-checks between the symbolic engine and the dense statevector simulator.

namespace qct::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

using ResidualRule = std::function<BellLabel(BellLabel, BellLabel, BellLabel)>;

inline constexpr double EXACT_TOLERANCE = 1e-9;
inline constexpr double TV_THRESHOLD = 0.02;

/// Every (b1, b2, outcome): after projecting one qubit of each pair onto `outcome`, the two
/// untouched qubits must be exactly in rule(b1, b2, outcome). All four choices of measured
/// qubits are tried for each case.
inline CheckResult check_residual_table(const ResidualRule &rule = swap_residual) {
    int cases = 0;
    int failures = 0;
    std::string first_failure;
    for (auto b1 : BellLabel::all()) {
        for (auto b2 : BellLabel::all()) {
            for (auto m : BellLabel::all()) {
                cases++;
                bool ok = true;
                for (std::size_t a : {0, 1}) {
                    for (std::size_t c : {2, 3}) {
                        auto s = oracle::prepare_pairs({b1, b2});
                        double p = oracle::project_bell(s, a, c, m);
                        auto d = oracle::bell_distribution(s, 1 - a, 5 - c);
                        ok = ok && std::abs(p - 0.25) < EXACT_TOLERANCE &&
                             std::abs(d[rule(b1, b2, m)] - 1.0) < EXACT_TOLERANCE;
                    }
                }
                if (!ok) {
                    failures++;
                    if (first_failure.empty()) {
                        first_failure = std::string(b1.name()) + "," + std::string(b2.name()) + "," +
                                        std::string(m.name());
                    }
                }
            }
        }
    }
    std::string detail = std::to_string(cases - failures) + "/" + std::to_string(cases) + " cases match";
    if (failures) {
        detail += "; first mismatch at (" + first_failure + ")";
    }
    return {"residual-rule-table", failures == 0, detail};
}

/// Engine outcome_distribution against Born-rule probabilities, no sampling.
inline CheckResult check_exact_distributions() {
    double worst = 0;
    for (auto b1 : BellLabel::all()) {
        for (auto b2 : BellLabel::all()) {
            EntangledMatching e({{{Party::Alice, 1}, {Party::Alice, 2}, b1}, {{Party::Alice, 3}, {Party::Alice, 4}, b2}});
            auto s = oracle::prepare_pairs({b1, b2});
            auto cross_e = e.outcome_distribution({Party::Alice, 2}, {Party::Alice, 3});
            auto cross_o = oracle::bell_distribution(s, 1, 2);
            auto own_e = e.outcome_distribution({Party::Alice, 1}, {Party::Alice, 2});
            auto own_o = oracle::bell_distribution(s, 0, 1);
            for (std::size_t k = 0; k < 4; k++) {
                worst = std::max({worst, std::abs(cross_e[k] - cross_o.p[k]), std::abs(own_e[k] - own_o.p[k])});
            }
        }
    }
    return {"exact-distributions", worst < EXACT_TOLERANCE,
            "max |engine - oracle| = " + format_double(worst) + " over 16 label pairs"};
}

/// Sampled swapping outcomes from both simulators, compared in total variation.
inline CheckResult check_sampled_distributions(uint64_t samples, uint64_t seed) {
    double worst = 0;
    uint64_t stream = 0;
    for (auto [b1, b2] : std::vector<std::pair<BellLabel, BellLabel>>{{PHI_PLUS, PHI_PLUS}, {PSI_MINUS, PHI_MINUS}}) {
        std::array<double, 4> he{}, ho{};
        Rng rng_e = stream_rng(seed, stream++);
        Rng rng_o = stream_rng(seed, stream++);
        const auto s0 = oracle::prepare_pairs({b1, b2});
        for (uint64_t i = 0; i < samples; i++) {
            EntangledMatching e({{{Party::Alice, 1}, {Party::Alice, 2}, b1}, {{Party::Alice, 3}, {Party::Alice, 4}, b2}});
            he[e.measure({Party::Alice, 2}, {Party::Alice, 3}, rng_e).code()] += 1;
            ho[oracle::bell_measure_collapse(s0, 1, 2, rng_o).first.code()] += 1;
        }
        for (std::size_t k = 0; k < 4; k++) {
            he[k] /= static_cast<double>(samples);
            ho[k] /= static_cast<double>(samples);
        }
        worst = std::max(worst, stats::tv_distance(he, ho));
    }
    return {"sampled-distributions", worst < TV_THRESHOLD,
            "max TV(engine, oracle) = " + format_double(worst) + " at " + std::to_string(samples) + " samples"};
}

/// Random maximal measurement sequences on up to `max_pairs` pairs with random initial labels.
/// The oracle samples each outcome; the engine follows with the same outcome and must predict the
/// oracle's distribution at every step. Total outcome parity must equal total initial parity in
/// both simulators, and engine-only runs must satisfy the same.
inline CheckResult check_lemma(uint32_t max_pairs, uint32_t trials, uint64_t seed) {
    uint64_t violations = 0;
    uint64_t runs = 0;
    for (uint32_t n = 1; n <= max_pairs; n++) {
        for (uint32_t t = 0; t < trials; t++) {
            Rng rng = stream_rng(seed, (static_cast<uint64_t>(n) << 32) | t);
            std::uniform_int_distribution<unsigned> pick(0, 3);
            std::vector<BellLabel> labels;
            std::vector<BellEdge> edges;
            for (uint32_t i = 0; i < n; i++) {
                labels.push_back(BellLabel::from_code(pick(rng)));
                edges.push_back({{Party::Alice, 2 * i + 1}, {Party::Alice, 2 * i + 2}, labels.back()});
            }
            const bool initial_parity = total_parity(labels);
            std::vector<uint32_t> order(2 * n);
            std::iota(order.begin(), order.end(), 0u);
            std::shuffle(order.begin(), order.end(), rng);

            auto state = oracle::prepare_pairs(labels);
            EntangledMatching follower(edges);
            EntangledMatching solo(edges);
            std::vector<BellLabel> oracle_outcomes;
            bool ok = true;
            for (uint32_t k = 0; k < 2 * n; k += 2) {
                const uint32_t q1 = order[k];
                const uint32_t q2 = order[k + 1];
                const ParticleId u{Party::Alice, q1 + 1};
                const ParticleId v{Party::Alice, q2 + 1};
                auto od = oracle::bell_distribution(state, q1, q2);
                auto ed = follower.outcome_distribution(u, v);
                for (std::size_t c = 0; c < 4; c++) {
                    ok = ok && std::abs(od.p[c] - ed[c]) < EXACT_TOLERANCE;
                }
                auto [m, next] = oracle::bell_measure_collapse(std::move(state), q1, q2, rng);
                state = std::move(next);
                ok = ok && std::abs(state.norm_squared() - 1.0) < oracle::NORM_TOLERANCE;
                oracle_outcomes.push_back(m);
                follower.measure_forced(u, v, m);
                solo.measure(u, v, rng);
                ok = ok && follower.conserved_xor() == follower.reference_xor() &&
                     solo.conserved_xor() == solo.reference_xor();
            }
            std::vector<BellLabel> solo_outcomes;
            for (const auto &h : solo.history()) {
                solo_outcomes.push_back(h.outcome);
            }
            ok = ok && total_parity(oracle_outcomes) == initial_parity && total_parity(solo_outcomes) == initial_parity;
            violations += !ok;
            runs++;
        }
    }
    return {"lemma", violations == 0,
            std::to_string(violations) + " violations in " + std::to_string(runs) + " sequences (N <= " +
                std::to_string(max_pairs) + ")"};
}

namespace detail {

/// Joint outcome key: Alice's N codes followed by Bob's N codes, two bits each.
inline uint64_t outcome_key(std::span<const BellLabel> alice, std::span<const BellLabel> bob) {
    uint64_t k = 0;
    for (auto b : alice) k = (k << 2) | b.code();
    for (auto b : bob) k = (k << 2) | b.code();
    return k;
}

inline void enumerate_branches(const oracle::QuantumState &s, const std::vector<std::pair<std::size_t, std::size_t>> &plan,
                               std::size_t step, double weight, uint64_t key, std::map<uint64_t, double> &out) {
    if (step == plan.size()) {
        out[key] += weight;
        return;
    }
    for (auto b : BellLabel::all()) {
        auto next = s;
        double p = oracle::project_bell(next, plan[step].first, plan[step].second, b);
        if (p > oracle::ZERO_BRANCH) {
            enumerate_branches(next, plan, step + 1, weight * p, (key << 2) | b.code(), out);
        }
    }
}

}  // namespace detail

/// Exact joint distribution of (Alice outcomes, Bob outcomes) for an honest noiseless session,
/// computed on the dense state of all 4N qubits. Alice's particle i is qubit i-1 and Bob's
/// particle i is qubit 2N+i-1.
inline std::map<uint64_t, double> oracle_honest_distribution(uint32_t n) {
    std::vector<BellLabel> labels(2 * n, PHI_PLUS);
    auto s = oracle::prepare_pairs(labels);
    std::vector<std::pair<std::size_t, std::size_t>> plan;
    for (uint32_t m = 0; m < n; m++) {
        plan.push_back({2 * m + 1, 2 * n + 2 * m});  // Alice: her 2m against Bob's 2m-1
    }
    for (uint32_t m = 0; m < n; m++) {
        plan.push_back({2 * n + 2 * m + 1, 2 * m});  // Bob: his 2m against Alice's 2m-1
    }
    std::map<uint64_t, double> out;
    detail::enumerate_branches(s, plan, 0, 1.0, 0, out);
    return out;
}

/// Honest engine sessions against the oracle's exact joint outcome distribution.
inline CheckResult check_honest_against_oracle(uint32_t max_pairs, uint64_t samples, uint64_t seed) {
    double worst = 0;
    for (uint32_t n = 1; n <= max_pairs; n++) {
        auto exact = oracle_honest_distribution(n);
        std::map<uint64_t, double> empirical;
        for (uint64_t i = 0; i < samples; i++) {
            Rng rng = stream_rng(seed ^ (0xC0FFEEULL * n), i);
            auto t = run_honest(SessionConfig{n, seed, std::nullopt}, rng);
            empirical[detail::outcome_key(t.alice_outcomes(), t.bob_outcomes())] += 1.0 / static_cast<double>(samples);
        }
        double tv = 0;
        for (const auto &[k, p] : exact) {
            auto it = empirical.find(k);
            tv += std::abs(p - (it == empirical.end() ? 0.0 : it->second));
        }
        for (const auto &[k, p] : empirical) {
            if (!exact.contains(k)) {
                tv += p;
            }
        }
        worst = std::max(worst, tv / 2);
    }
    return {"honest-vs-oracle", worst < TV_THRESHOLD,
            "max TV = " + format_double(worst) + " for N <= " + std::to_string(max_pairs) + " at " +
                std::to_string(samples) + " sessions"};
}

struct VerifyOptions {
    uint64_t seed = 0;
    uint32_t lemma_max_pairs = 4;
    uint32_t lemma_trials = 1000;
    uint64_t samples = 100000;
    uint32_t honest_max_pairs = 3;
    ResidualRule rule = swap_residual;
};

inline std::vector<CheckResult> run_verification(const VerifyOptions &opt) {
    return {
        check_residual_table(opt.rule),
        check_exact_distributions(),
        check_sampled_distributions(opt.samples, opt.seed),
        check_lemma(opt.lemma_max_pairs, opt.lemma_trials, opt.seed),
        check_honest_against_oracle(opt.honest_max_pairs, opt.samples, opt.seed),
    };
}

}  // namespace qct::verify

#endif
