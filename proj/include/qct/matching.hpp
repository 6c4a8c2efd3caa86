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

#ifndef QCT_MATCHING_HPP
#define QCT_MATCHING_HPP

#include <array>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "qct/bell.hpp"

namespace qct {

struct BellEdge {
    ParticleId first;
    ParticleId second;
    BellLabel label;

    bool operator==(const BellEdge &) const = default;
};

struct MeasurementRecord {
    ParticleId first;
    ParticleId second;
    BellLabel outcome;

    bool operator==(const MeasurementRecord &) const = default;
};

/// Symbolic state of a collection of particles that are pairwise maximally entangled.
///
/// Every live particle belongs to exactly one edge carrying a Bell label. A Bell measurement on two
/// partners returns the edge label and removes the edge; a Bell measurement across two edges
/// (u,u') and (v,v') is entanglement swapping: the outcome is uniform and (u',v') becomes an edge.
///
/// Invariant: XOR(live labels) ^ XOR(history outcomes) == reference_xor() after every call. The
/// parity bit of that identity is the total-parity conservation law.
class EntangledMatching {
   public:
    EntangledMatching() = default;

    explicit EntangledMatching(const std::vector<BellEdge> &edges) {
        for (const auto &e : edges) {
            add_pair(e.first, e.second, e.label);
        }
    }

    void add_pair(ParticleId a, ParticleId b, BellLabel label) {
        if (a == b) {
            throw Error(ErrorCode::SelfMeasurement, "cannot pair " + a.str() + " with itself");
        }
        if (nodes_.contains(a) || nodes_.contains(b)) {
            throw Error(ErrorCode::DuplicateParticle, (nodes_.contains(a) ? a : b).str() + " already present");
        }
        nodes_[a] = Node{b, label, true};
        nodes_[b] = Node{a, label, true};
        reference_ ^= label;
    }

    bool contains(ParticleId p) const { return nodes_.contains(p); }

    bool is_live(ParticleId p) const {
        auto it = nodes_.find(p);
        return it != nodes_.end() && it->second.live;
    }

    ParticleId partner(ParticleId p) const { return live_node(p).partner; }
    BellLabel label_of(ParticleId p) const { return live_node(p).label; }

    /// Local Pauli on one particle: rewrites its edge label. This is not a measurement, so the
    /// reference value of the conservation law moves with it.
    void apply_pauli(ParticleId p, PauliLabel pauli) {
        auto &n = live_node(p);
        auto &m = nodes_.at(n.partner);
        n.label = qct::apply_pauli(n.label, pauli);
        m.label = n.label;
        reference_ ^= pauli.as_bell_offset();
    }

    /// Exact Born-rule probabilities of the four outcomes, indexed by BellLabel::code().
    std::array<double, 4> outcome_distribution(ParticleId u, ParticleId v) const {
        check_pair(u, v);
        const auto &nu = live_node(u);
        if (nu.partner == v) {
            std::array<double, 4> r{};
            r[nu.label.code()] = 1.0;
            return r;
        }
        return {0.25, 0.25, 0.25, 0.25};
    }

    /// Bell measurement on (u, v). Partners are measured deterministically without touching `rng`.
    template <std::uniform_random_bit_generator Rng>
    BellLabel measure(ParticleId u, ParticleId v, Rng &rng) {
        check_pair(u, v);
        if (live_node(u).partner == v) {
            return measure_forced(u, v, live_node(u).label);
        }
        std::uniform_int_distribution<unsigned> pick(0, 3);
        return measure_forced(u, v, BellLabel::from_code(pick(rng)));
    }

    /// Bell measurement on (u, v) with a prescribed outcome, e.g. one sampled by another simulator.
    BellLabel measure_forced(ParticleId u, ParticleId v, BellLabel outcome) {
        check_pair(u, v);
        auto &nu = live_node(u);
        auto &nv = live_node(v);
        if (nu.partner == v) {
            if (nu.label != outcome) {
                throw Error(ErrorCode::ImpossibleOutcome, u.str() + "," + v.str() + " are in " +
                                                              std::string(nu.label.name()) + ", not " +
                                                              std::string(outcome.name()));
            }
            nu.live = false;
            nv.live = false;
        } else {
            ParticleId u2 = nu.partner;
            ParticleId v2 = nv.partner;
            BellLabel residual = swap_residual(nu.label, nv.label, outcome);
            nu.live = false;
            nv.live = false;
            nodes_[u2] = Node{v2, residual, true};
            nodes_[v2] = Node{u2, residual, true};
        }
        history_.push_back({u, v, outcome});
        return outcome;
    }

    /// Each live edge once, ordered by its smaller endpoint.
    std::vector<BellEdge> live_edges() const {
        std::vector<BellEdge> out;
        for (const auto &[id, n] : nodes_) {
            if (n.live && id < n.partner) {
                out.push_back({id, n.partner, n.label});
            }
        }
        return out;
    }

    std::vector<ParticleId> live_particles() const {
        std::vector<ParticleId> out;
        for (const auto &[id, n] : nodes_) {
            if (n.live) {
                out.push_back(id);
            }
        }
        return out;
    }

    const std::vector<MeasurementRecord> &history() const { return history_; }

    BellLabel reference_xor() const { return reference_; }

    /// XOR of live labels and of all recorded outcomes; equals reference_xor() at every step.
    BellLabel conserved_xor() const {
        BellLabel acc = PHI_PLUS;
        for (const auto &e : live_edges()) {
            acc ^= e.label;
        }
        for (const auto &h : history_) {
            acc ^= h.outcome;
        }
        return acc;
    }

   private:
    struct Node {
        ParticleId partner;
        BellLabel label;
        bool live = true;
    };

    const Node &live_node(ParticleId p) const {
        auto it = nodes_.find(p);
        if (it == nodes_.end()) {
            throw Error(ErrorCode::UnknownParticle, p.str());
        }
        if (!it->second.live) {
            throw Error(ErrorCode::AlreadyMeasured, p.str());
        }
        return it->second;
    }
    Node &live_node(ParticleId p) { return const_cast<Node &>(std::as_const(*this).live_node(p)); }

    void check_pair(ParticleId u, ParticleId v) const {
        live_node(u);
        live_node(v);
        if (u == v) {
            throw Error(ErrorCode::SelfMeasurement, u.str());
        }
    }

    std::map<ParticleId, Node> nodes_;
    std::vector<MeasurementRecord> history_;
    BellLabel reference_ = PHI_PLUS;
};

}  // namespace qct

#endif
