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

#ifndef QCT_BELL_HPP
#define QCT_BELL_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "qct/error.hpp"

namespace qct {

/// Identifies one of the four Bell states by two classical bits.
///
///     00 = Φ⁺ = (|00⟩ + |11⟩)/√2
///     01 = Φ⁻ = (|00⟩ - |11⟩)/√2
///     10 = Ψ⁺ = (|01⟩ + |10⟩)/√2
///     11 = Ψ⁻ = (|01⟩ - |10⟩)/√2
///
/// Up to a global phase, label (hi, lo) is the state (X^hi Z^lo ⊗ I)|Φ⁺⟩, so labels form the group
/// Z2 x Z2 under XOR. Global phases are not tracked.
class BellLabel {
   public:
    constexpr BellLabel() = default;
    constexpr BellLabel(bool hi, bool lo) : code_(static_cast<uint8_t>((hi ? 2 : 0) | (lo ? 1 : 0))) {}

    /// `code` must be in [0, 4).
    static constexpr BellLabel from_code(unsigned code) {
        if (code > 3) {
            throw Error(ErrorCode::IndexOutOfRange, "Bell label code " + std::to_string(code) + " not in [0, 4)");
        }
        return BellLabel((code & 2) != 0, (code & 1) != 0);
    }

    static constexpr std::array<BellLabel, 4> all() {
        return {BellLabel(false, false), BellLabel(false, true), BellLabel(true, false), BellLabel(true, true)};
    }

    constexpr bool hi() const { return (code_ & 2) != 0; }
    constexpr bool lo() const { return (code_ & 1) != 0; }
    constexpr unsigned code() const { return code_; }

    constexpr BellLabel operator^(BellLabel other) const { return from_code(code_ ^ other.code_); }
    constexpr BellLabel &operator^=(BellLabel other) {
        code_ ^= other.code_;
        return *this;
    }
    constexpr auto operator<=>(const BellLabel &) const = default;

    /// "00", "01", "10" or "11".
    std::string bits() const { return {hi() ? '1' : '0', lo() ? '1' : '0'}; }

    std::string_view name() const {
        static constexpr std::array<std::string_view, 4> names{"Phi+", "Phi-", "Psi+", "Psi-"};
        return names[code_];
    }

    /// Accepts the two-bit form ("01") or the ASCII name ("Phi-").
    static std::optional<BellLabel> parse(std::string_view text) {
        for (auto b : all()) {
            if (text == b.bits() || text == b.name()) {
                return b;
            }
        }
        return std::nullopt;
    }

   private:
    uint8_t code_ = 0;
};

inline constexpr BellLabel PHI_PLUS{false, false};
inline constexpr BellLabel PHI_MINUS{false, true};
inline constexpr BellLabel PSI_PLUS{true, false};
inline constexpr BellLabel PSI_MINUS{true, true};

/// Phase-free single-qubit Pauli, stored as its (x, z) bits: I=(0,0), X=(1,0), Z=(0,1), Y=(1,1).
/// Composition is XOR; every element is its own inverse.
class PauliLabel {
   public:
    constexpr PauliLabel() = default;
    constexpr PauliLabel(bool x, bool z) : x_(x), z_(z) {}

    constexpr bool x() const { return x_; }
    constexpr bool z() const { return z_; }

    constexpr PauliLabel operator*(PauliLabel other) const { return {x_ != other.x_, z_ != other.z_}; }
    constexpr auto operator<=>(const PauliLabel &) const = default;

    /// The Bell label this Pauli produces when applied to one half of Φ⁺.
    constexpr BellLabel as_bell_offset() const { return {x_, z_}; }

    static constexpr std::array<PauliLabel, 4> all() {
        return {PauliLabel(false, false), PauliLabel(true, false), PauliLabel(true, true), PauliLabel(false, true)};
    }

    char symbol() const {
        if (x_) {
            return z_ ? 'Y' : 'X';
        }
        return z_ ? 'Z' : 'I';
    }

    static std::optional<PauliLabel> parse(std::string_view text) {
        if (text.size() != 1) {
            return std::nullopt;
        }
        for (auto p : all()) {
            if (text[0] == p.symbol() || text[0] == p.symbol() - 'A' + 'a') {
                return p;
            }
        }
        return std::nullopt;
    }

   private:
    bool x_ = false;
    bool z_ = false;
};

inline constexpr PauliLabel PAULI_I{false, false};
inline constexpr PauliLabel PAULI_X{true, false};
inline constexpr PauliLabel PAULI_Y{true, true};
inline constexpr PauliLabel PAULI_Z{false, true};

/// Even (0) for Φ⁺ and Ψ⁻, odd (1) for Φ⁻ and Ψ⁺.
constexpr bool parity(BellLabel b) { return b.hi() != b.lo(); }

constexpr bool parity(PauliLabel p) { return parity(p.as_bell_offset()); }

/// Label of (σ ⊗ I)|b⟩ up to global phase. Acting on the second qubit gives the same label, since
/// (I ⊗ σ)|Φ⁺⟩ = (σᵀ ⊗ I)|Φ⁺⟩ and σᵀ = ±σ.
constexpr BellLabel apply_pauli(BellLabel b, PauliLabel p) { return b ^ p.as_bell_offset(); }

/// XOR of the parities; an empty list is even.
constexpr bool total_parity(std::span<const BellLabel> outcomes) {
    bool acc = false;
    for (auto b : outcomes) {
        acc = acc != parity(b);
    }
    return acc;
}

/// XOR of the labels as 2-bit values; the identity is Φ⁺.
constexpr BellLabel label_xor(std::span<const BellLabel> labels) {
    BellLabel acc = PHI_PLUS;
    for (auto b : labels) {
        acc ^= b;
    }
    return acc;
}

/// Entanglement swapping: pairs (u, u') in `first` and (v, v') in `second`, Bell measurement on
/// (u, v) yielding `outcome` leaves (u', v') in this label.
constexpr BellLabel swap_residual(BellLabel first, BellLabel second, BellLabel outcome) {
    return first ^ second ^ outcome;
}

enum class Party : uint8_t { Alice, Bob };

constexpr std::string_view party_name(Party p) { return p == Party::Alice ? "alice" : "bob"; }
constexpr Party other(Party p) { return p == Party::Alice ? Party::Bob : Party::Alice; }

/// A physical particle. Indices follow the protocol numbering 1..2N per owner: pair m is
/// (2m-1, 2m), the odd particle is transmitted and the even one is kept.
struct ParticleId {
    Party owner = Party::Alice;
    uint32_t index = 1;

    constexpr auto operator<=>(const ParticleId &) const = default;

    static constexpr ParticleId odd(Party owner, uint32_t pair) { return {owner, 2 * pair + 1}; }
    static constexpr ParticleId even(Party owner, uint32_t pair) { return {owner, 2 * pair + 2}; }

    /// 0-based pair index.
    constexpr uint32_t pair() const { return (index - 1) / 2; }

    std::string str() const { return (owner == Party::Alice ? "A" : "B") + std::to_string(index); }
};

}  // namespace qct

#endif
