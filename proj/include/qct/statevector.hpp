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

#ifndef QCT_STATEVECTOR_HPP
#define QCT_STATEVECTOR_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "qct/bell.hpp"

// Dense reference simulator. It has no knowledge of the XOR structure of Bell labels:
// the four Bell vectors are written out amplitude by amplitude and every probability comes from
// the Born rule, so it can be used to check the symbolic engine.

namespace qct::oracle {

inline constexpr std::size_t MAX_QUBITS = 16;
inline constexpr double NORM_TOLERANCE = 1e-9;
/// Branches at or below this weight are treated as impossible when sampling.
inline constexpr double ZERO_BRANCH = 1e-12;

using Amplitude = std::complex<double>;

/// Probabilities of the four Bell outcomes, indexed by BellLabel::code().
struct OutcomeDistribution {
    std::array<double, 4> p{};

    double operator[](BellLabel b) const { return p[b.code()]; }
};

/// Basis index convention: qubit 0 is the most significant bit, so for two qubits the amplitude
/// order is |00⟩, |01⟩, |10⟩, |11⟩.
class QuantumState {
   public:
    QuantumState() = default;

    QuantumState(std::size_t qubit_count, std::vector<Amplitude> amplitudes)
        : qubits_(qubit_count), amps_(std::move(amplitudes)) {
        if (qubits_ > MAX_QUBITS) {
            throw Error(ErrorCode::TooManyQubits, std::to_string(qubits_) + " > " + std::to_string(MAX_QUBITS));
        }
        if (amps_.size() != (std::size_t{1} << qubits_)) {
            throw Error(ErrorCode::SizeMismatch, "amplitude count does not match qubit count");
        }
    }

    std::size_t qubit_count() const { return qubits_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::span<Amplitude> amplitudes() { return amps_; }

    double norm_squared() const {
        double t = 0;
        for (const auto &a : amps_) {
            t += std::norm(a);
        }
        return t;
    }

    std::size_t mask(std::size_t qubit) const { return std::size_t{1} << (qubits_ - 1 - qubit); }

   private:
    std::size_t qubits_ = 0;
    std::vector<Amplitude> amps_;
};

namespace detail {

inline const double INV_SQRT2 = 1.0 / std::sqrt(2.0);

/// Amplitudes of a Bell vector in the order |00⟩, |01⟩, |10⟩, |11⟩. All are real.
inline std::array<double, 4> bell_vector(BellLabel b) {
    const double s = INV_SQRT2;
    switch (b.code()) {
        case 0: return {s, 0, 0, s};    // Φ⁺
        case 1: return {s, 0, 0, -s};   // Φ⁻
        case 2: return {0, s, s, 0};    // Ψ⁺
        default: return {0, s, -s, 0};  // Ψ⁻
    }
}

inline void check_qubits(const QuantumState &s, std::size_t q1, std::size_t q2) {
    if (q1 >= s.qubit_count() || q2 >= s.qubit_count()) {
        throw Error(ErrorCode::IndexOutOfRange, "qubit (" + std::to_string(q1) + "," + std::to_string(q2) +
                                                    ") with only " + std::to_string(s.qubit_count()));
    }
    if (q1 == q2) {
        throw Error(ErrorCode::CoincidentIndices, "qubit " + std::to_string(q1));
    }
}

/// Calls body(i00, i01, i10, i11) for every assignment of the other qubits, where ixy is the
/// basis index with qubit q1 = x and qubit q2 = y.
template <typename Body>
void for_each_pair_block(const QuantumState &s, std::size_t q1, std::size_t q2, Body body) {
    const std::size_t m1 = s.mask(q1);
    const std::size_t m2 = s.mask(q2);
    const std::size_t n = s.amplitudes().size();
    for (std::size_t base = 0; base < n; base++) {
        if (base & (m1 | m2)) {
            continue;
        }
        body(base, base | m2, base | m1, base | m1 | m2);
    }
}

inline Amplitude overlap(const std::array<double, 4> &bell, std::span<const Amplitude> a, std::size_t i00,
                         std::size_t i01, std::size_t i10, std::size_t i11) {
    return bell[0] * a[i00] + bell[1] * a[i01] + bell[2] * a[i10] + bell[3] * a[i11];
}

}  // namespace detail

/// Tensor product of the given Bell pairs; pair i occupies qubits (2i, 2i+1).
inline QuantumState prepare_pairs(std::span<const BellLabel> labels) {
    const std::size_t qubits = 2 * labels.size();
    if (qubits > MAX_QUBITS) {
        throw Error(ErrorCode::TooManyQubits,
                    std::to_string(labels.size()) + " pairs need " + std::to_string(qubits) + " qubits");
    }
    std::vector<Amplitude> amps{Amplitude{1.0}};
    for (auto b : labels) {
        auto v = detail::bell_vector(b);
        std::vector<Amplitude> next(amps.size() * 4);
        for (std::size_t i = 0; i < amps.size(); i++) {
            for (std::size_t j = 0; j < 4; j++) {
                next[i * 4 + j] = amps[i] * v[j];
            }
        }
        amps = std::move(next);
    }
    return QuantumState(qubits, std::move(amps));
}

inline QuantumState prepare_pairs(std::initializer_list<BellLabel> labels) {
    return prepare_pairs(std::span<const BellLabel>(labels.begin(), labels.size()));
}

/// Born-rule probabilities of projecting qubits (q1, q2) onto each Bell state.
inline OutcomeDistribution bell_distribution(const QuantumState &s, std::size_t q1, std::size_t q2) {
    detail::check_qubits(s, q1, q2);
    OutcomeDistribution d;
    auto a = s.amplitudes();
    for (auto b : BellLabel::all()) {
        auto v = detail::bell_vector(b);
        double t = 0;
        detail::for_each_pair_block(s, q1, q2, [&](std::size_t i00, std::size_t i01, std::size_t i10, std::size_t i11) {
            t += std::norm(detail::overlap(v, a, i00, i01, i10, i11));
        });
        d.p[b.code()] = t;
    }
    return d;
}

/// Projects (q1, q2) onto the Bell state `outcome` and renormalizes. Returns the probability of
/// that branch; the state is left untouched (and 0 returned) when the branch is impossible.
inline double project_bell(QuantumState &s, std::size_t q1, std::size_t q2, BellLabel outcome) {
    double p = bell_distribution(s, q1, q2)[outcome];
    if (p <= ZERO_BRANCH) {
        return 0;
    }
    auto v = detail::bell_vector(outcome);
    auto a = s.amplitudes();
    const double scale = 1.0 / std::sqrt(p);
    detail::for_each_pair_block(s, q1, q2, [&](std::size_t i00, std::size_t i01, std::size_t i10, std::size_t i11) {
        Amplitude c = detail::overlap(v, a, i00, i01, i10, i11) * scale;
        a[i00] = c * v[0];
        a[i01] = c * v[1];
        a[i10] = c * v[2];
        a[i11] = c * v[3];
    });
    return p;
}

/// Samples a Bell outcome on (q1, q2) and returns it with the collapsed, renormalized state.
/// Zero-probability outcomes are never returned.
template <std::uniform_random_bit_generator Rng>
std::pair<BellLabel, QuantumState> bell_measure_collapse(QuantumState s, std::size_t q1, std::size_t q2, Rng &rng) {
    auto d = bell_distribution(s, q1, q2);
    double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    BellLabel chosen = PHI_PLUS;
    bool found = false;
    double acc = 0;
    for (auto b : BellLabel::all()) {
        if (d[b] <= ZERO_BRANCH) {
            continue;
        }
        chosen = b;
        found = true;
        acc += d[b];
        if (r < acc) {
            break;
        }
    }
    if (!found) {
        throw Error(ErrorCode::ImpossibleOutcome, "state has zero weight on every Bell outcome");
    }
    project_bell(s, q1, q2, chosen);
    return {chosen, std::move(s)};
}

}  // namespace qct::oracle

#endif
