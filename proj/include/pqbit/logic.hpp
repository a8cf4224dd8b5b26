#pragma once

#include <span>
#include <stdexcept>

#include "pqbit/tnorm.hpp"

namespace pqbit {

/// Four-valued paraconsistent bit: independent truth and falsity
/// coordinates.  (1,0) = True, (0,1) = False, (1,1) = Both, (0,0) = Neither.
struct PBit {
    bool t = false;
    bool f = false;
    bool operator==(const PBit&) const = default;
};

inline constexpr PBit kTrue{true, false};
inline constexpr PBit kFalse{false, true};
inline constexpr PBit kBoth{true, true};
inline constexpr PBit kNeither{false, false};

char pbit_code(PBit v);              // 'T', 'F', 'B', 'N'
PBit pbit_from_code(char c);         // throws std::invalid_argument on anything else

/// Which second coordinate the implication uses: Printed keeps x' & y',
/// Standard uses x & y'.
enum class ImplVariant { Printed, Standard };

constexpr PBit cd_meet(PBit a, PBit b) { return {a.t && b.t, a.f || b.f}; }
constexpr PBit cd_join(PBit a, PBit b) { return {a.t || b.t, a.f && b.f}; }
constexpr PBit cd_neg(PBit a) { return {a.f, a.t}; }
constexpr PBit cd_impl(PBit a, PBit b, ImplVariant variant) {
    const bool first = !a.t || b.t;
    const bool second = variant == ImplVariant::Printed ? (a.f && b.f) : (a.t && b.f);
    return {first, second};
}

/// Evidence counts over `total` micro-situations.  Positive and negative
/// counts are tallied per coordinate, so an all-Both batch yields
/// n_plus = n_minus = total.
struct Evidence {
    long n_plus = 0;
    long n_minus = 0;
    long total = 0;
    bool operator==(const Evidence&) const = default;
};

void validate(const Evidence& e);  // throws std::invalid_argument

Evidence aggregate(std::span<const PBit> bits);

/// Normalized evidence: (n+/N, n-/N).  Coordinates are independent, so the
/// sum ranges over [0,2].
struct TruthPair {
    double w_plus = 0.0;
    double w_minus = 0.0;
    bool operator==(const TruthPair&) const = default;
};

void validate(const TruthPair& w);

TruthPair normalize(const Evidence& e);
TruthPair embed(PBit v);

TruthPair fuzzy_meet(const TruthPair& a, const TruthPair& b, const TNormFamily& fam);
TruthPair fuzzy_join(const TruthPair& a, const TruthPair& b, const TNormFamily& fam);

/// De Morgan negation: swaps the coordinates.
TruthPair fuzzy_neg(const TruthPair& a);

/// Coordinatewise complement (1-w+, 1-w-).  Kept for comparison; it does
/// not form a De Morgan triplet with the fuzzy connectives.
TruthPair coord_neg(const TruthPair& a);

/// First coordinate is the residuum of the family, second the
/// variant-selected t-norm combination.
TruthPair fuzzy_impl(const TruthPair& a, const TruthPair& b, const TNormFamily& fam, ImplVariant variant);

}  // namespace pqbit
