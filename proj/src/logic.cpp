#include "pqbit/logic.hpp"

namespace pqbit {

char pbit_code(PBit v) {
    if (v == kTrue) return 'T';
    if (v == kFalse) return 'F';
    if (v == kBoth) return 'B';
    return 'N';
}

PBit pbit_from_code(char c) {
    switch (c) {
        case 'T': return kTrue;
        case 'F': return kFalse;
        case 'B': return kBoth;
        case 'N': return kNeither;
        default: throw std::invalid_argument(std::string("pbit_from_code: bad code '") + c + "'");
    }
}

void validate(const Evidence& e) {
    if (e.total <= 0) throw std::invalid_argument("Evidence: total must be positive");
    if (e.n_plus < 0 || e.n_minus < 0) throw std::invalid_argument("Evidence: counts must be non-negative");
    if (e.n_plus > e.total || e.n_minus > e.total) throw std::invalid_argument("Evidence: counts exceed total");
}

Evidence aggregate(std::span<const PBit> bits) {
    if (bits.empty()) throw std::invalid_argument("aggregate: empty batch");
    Evidence e{0, 0, static_cast<long>(bits.size())};
    for (const PBit& b : bits) {
        e.n_plus += b.t ? 1 : 0;
        e.n_minus += b.f ? 1 : 0;
    }
    return e;
}

void validate(const TruthPair& w) {
    if (!(w.w_plus >= 0.0 && w.w_plus <= 1.0 && w.w_minus >= 0.0 && w.w_minus <= 1.0)) {
        throw std::domain_error("TruthPair: coordinates must lie in [0,1]");
    }
}

TruthPair normalize(const Evidence& e) {
    validate(e);
    const double n = static_cast<double>(e.total);
    return {static_cast<double>(e.n_plus) / n, static_cast<double>(e.n_minus) / n};
}

TruthPair embed(PBit v) {
    return {v.t ? 1.0 : 0.0, v.f ? 1.0 : 0.0};
}

TruthPair fuzzy_meet(const TruthPair& a, const TruthPair& b, const TNormFamily& fam) {
    return {tnorm(fam, a.w_plus, b.w_plus), conorm(fam, a.w_minus, b.w_minus)};
}

TruthPair fuzzy_join(const TruthPair& a, const TruthPair& b, const TNormFamily& fam) {
    return {conorm(fam, a.w_plus, b.w_plus), tnorm(fam, a.w_minus, b.w_minus)};
}

TruthPair fuzzy_neg(const TruthPair& a) {
    return {a.w_minus, a.w_plus};
}

TruthPair coord_neg(const TruthPair& a) {
    return {1.0 - a.w_plus, 1.0 - a.w_minus};
}

TruthPair fuzzy_impl(const TruthPair& a, const TruthPair& b, const TNormFamily& fam, ImplVariant variant) {
    const double first = residuum(fam, a.w_plus, b.w_plus);
    const double second = variant == ImplVariant::Printed ? tnorm(fam, a.w_minus, b.w_minus)
                                                          : tnorm(fam, a.w_plus, b.w_minus);
    return {first, second};
}

}  // namespace pqbit
