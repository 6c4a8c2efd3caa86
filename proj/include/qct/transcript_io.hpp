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

#ifndef QCT_TRANSCRIPT_IO_HPP
#define QCT_TRANSCRIPT_IO_HPP

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qct/protocol.hpp"

// Line-delimited JSON transcripts. One record per line:
//
//     {"index":0,"phase":"config","sender":"none","payload":{"n_pairs":2,"seed":7,"gamma":null}}
//     {"index":1,"phase":"particle_batch","sender":"alice","payload":{"particles":["A3","A1"]}}
//     {"index":2,"phase":"particle_batch","sender":"bob","payload":{"particles":["B1","B3"]}}
//     {"index":3,"phase":"sequence_announcement","sender":"alice","payload":{"sequence":[2,1]}}
//     {"index":4,"phase":"measurement","sender":"alice","payload":{"outcomes":["10","01"]}}
//     {"index":5,"phase":"measurement","sender":"bob","payload":{"outcomes":["10","01"]}}
//     {"index":6,"phase":"results_announcement","sender":"bob","payload":{"results":["10","01"]}}
//     {"index":7,"phase":"verdict","sender":"alice","payload":{"verdict":"accept"}}
//     {"index":8,"phase":"coin_announcement","sender":"alice","payload":{"coin":0}}
//
// Sequences are written with 1-based pair numbers to match particle numbering. An aborted coin is
// written as "abort".

namespace qct::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json labels_json(std::span<const BellLabel> labels) {
    Json a = Json::array();
    for (auto b : labels) {
        a.push_back(b.bits());
    }
    return a;
}

inline std::vector<BellLabel> labels_from(const Json &a) {
    std::vector<BellLabel> out;
    for (const auto &x : a) {
        auto b = BellLabel::parse(x.get<std::string>());
        if (!b) {
            throw Error(ErrorCode::InvalidConfig, "bad Bell label " + x.dump());
        }
        out.push_back(*b);
    }
    return out;
}

inline ParticleId particle_from(const std::string &s) {
    if (s.size() < 2 || (s[0] != 'A' && s[0] != 'B')) {
        throw Error(ErrorCode::UnknownParticle, "bad particle id '" + s + "'");
    }
    return {s[0] == 'A' ? Party::Alice : Party::Bob, static_cast<uint32_t>(std::stoul(s.substr(1)))};
}

inline Party party_from(const std::string &s) {
    if (s == "alice") {
        return Party::Alice;
    }
    if (s == "bob") {
        return Party::Bob;
    }
    throw Error(ErrorCode::InvalidConfig, "bad sender '" + s + "'");
}

struct MessageFields {
    std::string phase;
    Party sender;
    Json payload;
};

inline MessageFields fields(const Message &msg) {
    return std::visit(
        [](const auto &m) -> MessageFields {
            using T = std::decay_t<decltype(m)>;
            Json p = Json::object();
            if constexpr (std::is_same_v<T, ParticleBatch>) {
                Json ids = Json::array();
                for (auto id : m.particles) {
                    ids.push_back(id.str());
                }
                p["particles"] = std::move(ids);
                return {"particle_batch", m.sender, std::move(p)};
            } else if constexpr (std::is_same_v<T, SequenceAnnouncement>) {
                Json seq = Json::array();
                for (auto s : m.sequence.slots()) {
                    seq.push_back(s + 1);
                }
                p["sequence"] = std::move(seq);
                return {"sequence_announcement", m.sender, std::move(p)};
            } else if constexpr (std::is_same_v<T, ResultsAnnouncement>) {
                p["results"] = labels_json(m.results);
                return {"results_announcement", m.sender, std::move(p)};
            } else if constexpr (std::is_same_v<T, VerdictMessage>) {
                p["verdict"] = std::string(verdict_name(m.verdict));
                return {"verdict", m.sender, std::move(p)};
            } else {
                if (m.coin) {
                    p["coin"] = *m.coin ? 1 : 0;
                } else {
                    p["coin"] = "abort";
                }
                return {"coin_announcement", m.sender, std::move(p)};
            }
        },
        msg);
}

inline Json record(std::size_t index, const std::string &phase, std::string_view sender, Json payload) {
    Json r = Json::object();
    r["index"] = index;
    r["phase"] = phase;
    r["sender"] = std::string(sender);
    r["payload"] = std::move(payload);
    return r;
}

}  // namespace detail

inline std::vector<Json> transcript_records(const SessionTranscript &t) {
    std::vector<Json> out;
    Json cfg = Json::object();
    cfg["n_pairs"] = t.config().n_pairs;
    cfg["seed"] = t.config().seed;
    if (t.config().noise) {
        cfg["gamma"] = t.config().noise->gamma;
    } else {
        cfg["gamma"] = nullptr;
    }
    out.push_back(detail::record(0, "config", "none", std::move(cfg)));
    for (const auto &e : t.events()) {
        if (e.kind == TranscriptEvent::Kind::Message) {
            auto f = detail::fields(t.messages()[e.message_index]);
            out.push_back(detail::record(out.size(), f.phase, party_name(f.sender), std::move(f.payload)));
        } else {
            Json p = Json::object();
            p["outcomes"] = detail::labels_json(e.party == Party::Alice ? t.alice_outcomes() : t.bob_outcomes());
            out.push_back(detail::record(out.size(), "measurement", party_name(e.party), std::move(p)));
        }
    }
    return out;
}

inline void write_transcript_jsonl(const SessionTranscript &t, std::ostream &out) {
    for (const auto &r : transcript_records(t)) {
        out << r.dump() << '\n';
    }
}

/// Rebuilds a transcript by replaying every record through the same phase checks used when it was
/// produced, so reordered or truncated files are rejected.
inline SessionTranscript read_transcript_jsonl(std::istream &in) {
    std::string line;
    std::optional<SessionTranscript> t;
    std::size_t expected_index = 0;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        Json r;
        try {
            r = Json::parse(line);
        } catch (const nlohmann::json::exception &ex) {
            throw Error(ErrorCode::InvalidConfig, std::string("malformed transcript line: ") + ex.what());
        }
        if (r.at("index").get<std::size_t>() != expected_index) {
            throw Error(ErrorCode::PhaseOrder, "record index " + r.at("index").dump() + ", expected " +
                                                   std::to_string(expected_index));
        }
        expected_index++;
        const auto phase = r.at("phase").get<std::string>();
        const auto &p = r.at("payload");
        if (phase == "config") {
            if (t) {
                throw Error(ErrorCode::PhaseOrder, "second config record");
            }
            SessionConfig cfg;
            cfg.n_pairs = p.at("n_pairs").get<uint32_t>();
            cfg.seed = p.at("seed").get<uint64_t>();
            if (!p.at("gamma").is_null()) {
                cfg.noise = NoiseModel{p.at("gamma").get<double>()};
            }
            t.emplace(cfg);
            continue;
        }
        if (!t) {
            throw Error(ErrorCode::PhaseOrder, "transcript must start with a config record");
        }
        const Party sender = detail::party_from(r.at("sender").get<std::string>());
        if (phase == "measurement") {
            t->record_outcomes(sender, detail::labels_from(p.at("outcomes")));
        } else if (phase == "particle_batch") {
            ParticleBatch b{sender, {}};
            for (const auto &s : p.at("particles")) {
                b.particles.push_back(detail::particle_from(s.get<std::string>()));
            }
            t->append(std::move(b));
        } else if (phase == "sequence_announcement") {
            std::vector<uint32_t> v;
            for (const auto &s : p.at("sequence")) {
                const auto one_based = s.get<uint32_t>();
                if (one_based < 1) {
                    throw Error(ErrorCode::NotAPermutation, "sequence entries are 1-based");
                }
                v.push_back(one_based - 1);
            }
            t->append(SequenceAnnouncement{sender, Sequence(std::move(v))});
        } else if (phase == "results_announcement") {
            t->append(ResultsAnnouncement{sender, detail::labels_from(p.at("results"))});
        } else if (phase == "verdict") {
            const auto v = p.at("verdict").get<std::string>();
            if (v != "accept" && v != "reject") {
                throw Error(ErrorCode::InvalidConfig, "bad verdict '" + v + "'");
            }
            t->append(VerdictMessage{sender, v == "accept" ? Verdict::Accept : Verdict::Reject});
        } else if (phase == "coin_announcement") {
            const auto &c = p.at("coin");
            std::optional<bool> coin;
            if (!c.is_string()) {
                coin = c.get<int>() != 0;
            }
            t->append(CoinAnnouncement{sender, coin});
        } else {
            throw Error(ErrorCode::InvalidConfig, "unknown phase '" + phase + "'");
        }
    }
    if (!t) {
        throw Error(ErrorCode::InvalidConfig, "empty transcript");
    }
    return std::move(*t);
}

}  // namespace qct::io

#endif
