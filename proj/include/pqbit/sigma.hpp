#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pqbit/logic.hpp"

namespace pqbit {

/// Thrown by sigma_inverse when an amplitude lies outside the image of the
/// configured mapping.
struct out_of_image : std::domain_error {
    explicit out_of_image(const std::string& what) : std::domain_error(what) {}
};

/// Complex amplitude stored as (re, im).
struct Amplitude {
    double re = 0.0;
    double im = 0.0;
    bool operator==(const Amplitude&) const = default;
};

Amplitude amp_add(const Amplitude& a, const Amplitude& b);
Amplitude amp_mul(const Amplitude& a, const Amplitude& b);

/// z -> i * conj(z), i.e. (re, im) -> (im, re).
Amplitude amp_neg(const Amplitude& a);

double amp_abs(const Amplitude& a);

/// How the second coordinate of sigma is generated from w-:
///  - PureGenerator: f*(b) = f(1-b), the conorm generator pair (f, f*)
///  - Printed:       f*(b) = 1 - f(1-b)
///  - Symmetric:     f*(b) = f(b), which makes negation equivariance exact
enum class SigmaConvention { PureGenerator, Printed, Symmetric };

/// Which amplitude operation each lattice connective maps to.  Printed
/// sends meet -> add and join -> mul; Summary swaps them.
enum class OpMap { Printed, Summary };

std::string to_string(SigmaConvention c);
std::string to_string(OpMap m);
SigmaConvention sigma_convention_from(const std::string& s);
OpMap op_map_from(const std::string& s);

struct SigmaConfig {
    TNormFamily family = TNormFamily::schweizer_sklar(-1.0);
    SigmaConvention convention = SigmaConvention::PureGenerator;
    OpMap op_map = OpMap::Printed;
    double clamp = kGeneratorFloor;
};

/// Throws for families without an additive generator and for SS with p > 0,
/// which is excluded from the mapping.
void validate(const SigmaConfig& cfg);

/// Maps a truth pair to an amplitude; components are clamped into
/// [cfg.clamp, 1] before entering the generator.
Amplitude sigma(const SigmaConfig& cfg, const TruthPair& a);

/// Partial inverse; throws out_of_image for amplitudes the mapping cannot
/// produce.
TruthPair sigma_inverse(const SigmaConfig& cfg, const Amplitude& z);

Amplitude op_for_meet(const SigmaConfig& cfg, const Amplitude& a, const Amplitude& b);
Amplitude op_for_join(const SigmaConfig& cfg, const Amplitude& a, const Amplitude& b);

struct AuditRow {
    std::string family;
    double p = 0.0;
    SigmaConvention convention = SigmaConvention::PureGenerator;
    OpMap op_map = OpMap::Printed;
    std::string identity;
    double max_abs_err = 0.0;
    double mean_abs_err = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

using AuditReport = std::vector<AuditRow>;

/// Monte Carlo audit of the mapping identities (meet vs op, join vs op,
/// the printed offset form of meet->add, negation equivariance) for each
/// configuration.  Pairs are sampled uniformly from [clamp,1]^2; errors are
/// absolute complex moduli.  Each row draws from its own sub-stream, so the
/// report does not depend on row evaluation order.
AuditReport audit_identities(std::span<const SigmaConfig> cfgs, std::size_t samples, std::uint64_t seed);

/// Full sweep over p values x 3 conventions x 2 op maps, plus one
/// distributivity row per p and a min/max reference row.
AuditReport sweep(std::span<const double> p_values, std::size_t samples, std::uint64_t seed);

void write_audit_csv(const AuditReport& report, const std::string& path);

}  // namespace pqbit
