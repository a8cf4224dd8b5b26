#include "pqbit/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "pqbit/csv.hpp"
#include "pqbit/rng.hpp"

namespace pqbit {

namespace {

double clamp_unit(double v, double floor) {
    return std::min(1.0, std::max(v, floor));
}

double checked_generator(const TNormFamily& fam, double x, double clamp) {
    const double g = generator(fam, clamp_unit(x, clamp), clamp);
    if (!std::isfinite(g)) {
        throw std::domain_error("sigma: generator overflowed; raise the clamp floor or use a smaller |p|");
    }
    return g;
}

}  // namespace

Amplitude amp_add(const Amplitude& a, const Amplitude& b) {
    return {a.re + b.re, a.im + b.im};
}

Amplitude amp_mul(const Amplitude& a, const Amplitude& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Amplitude amp_neg(const Amplitude& a) {
    return {a.im, a.re};
}

double amp_abs(const Amplitude& a) {
    return std::hypot(a.re, a.im);
}

std::string to_string(SigmaConvention c) {
    switch (c) {
        case SigmaConvention::PureGenerator: return "pure_generator";
        case SigmaConvention::Printed: return "printed";
        case SigmaConvention::Symmetric: return "symmetric";
    }
    return "unknown";
}

std::string to_string(OpMap m) {
    return m == OpMap::Printed ? "printed" : "summary";
}

SigmaConvention sigma_convention_from(const std::string& s) {
    if (s == "pure_generator") return SigmaConvention::PureGenerator;
    if (s == "printed") return SigmaConvention::Printed;
    if (s == "symmetric") return SigmaConvention::Symmetric;
    throw std::invalid_argument("unknown sigma convention: " + s);
}

OpMap op_map_from(const std::string& s) {
    if (s == "printed") return OpMap::Printed;
    if (s == "summary") return OpMap::Summary;
    throw std::invalid_argument("unknown op map: " + s);
}

void validate(const SigmaConfig& cfg) {
    switch (cfg.family.kind) {
        case TNormKind::Product:
            break;
        case TNormKind::SchweizerSklar:
            if (cfg.family.p > 0.0) {
                throw std::domain_error("sigma: SS with p > 0 is excluded from the amplitude mapping");
            }
            if (!std::isfinite(cfg.family.p)) {
                throw std::domain_error("sigma: SS parameter must be finite");
            }
            break;
        default:
            throw not_additively_generated("sigma: " + family_name(cfg.family) + " has no additive generator");
    }
    if (!(cfg.clamp > 0.0 && cfg.clamp < 1.0)) {
        throw std::domain_error("sigma: clamp floor must lie in (0,1)");
    }
}

Amplitude sigma(const SigmaConfig& cfg, const TruthPair& a) {
    validate(cfg);
    const double re = checked_generator(cfg.family, a.w_plus, cfg.clamp);
    double im = 0.0;
    switch (cfg.convention) {
        case SigmaConvention::PureGenerator:
            im = checked_generator(cfg.family, 1.0 - a.w_minus, cfg.clamp);
            break;
        case SigmaConvention::Printed:
            im = 1.0 - checked_generator(cfg.family, 1.0 - a.w_minus, cfg.clamp);
            break;
        case SigmaConvention::Symmetric:
            im = checked_generator(cfg.family, a.w_minus, cfg.clamp);
            break;
    }
    return {re, im};
}

namespace {

// Inverts one generator coordinate, checking the value lands in [clamp, 1].
double invert_coordinate(const SigmaConfig& cfg, double u, const char* which) {
    if (!std::isfinite(u) || u < 0.0) {
        throw out_of_image(std::string("sigma_inverse: ") + which + " coordinate outside the image");
    }
    const double t = generator_inverse(cfg.family, u);
    if (t < cfg.clamp * (1.0 - 1e-9)) {
        throw out_of_image(std::string("sigma_inverse: ") + which + " coordinate maps below the clamp floor");
    }
    return clamp_unit(t, cfg.clamp);
}

}  // namespace

TruthPair sigma_inverse(const SigmaConfig& cfg, const Amplitude& z) {
    validate(cfg);
    const double w_plus = invert_coordinate(cfg, z.re, "real");
    double w_minus = 0.0;
    switch (cfg.convention) {
        case SigmaConvention::PureGenerator:
            w_minus = 1.0 - invert_coordinate(cfg, z.im, "imaginary");
            break;
        case SigmaConvention::Printed:
            w_minus = 1.0 - invert_coordinate(cfg, 1.0 - z.im, "imaginary");
            break;
        case SigmaConvention::Symmetric:
            w_minus = invert_coordinate(cfg, z.im, "imaginary");
            break;
    }
    return {w_plus, w_minus};
}

Amplitude op_for_meet(const SigmaConfig& cfg, const Amplitude& a, const Amplitude& b) {
    return cfg.op_map == OpMap::Printed ? amp_add(a, b) : amp_mul(a, b);
}

Amplitude op_for_join(const SigmaConfig& cfg, const Amplitude& a, const Amplitude& b) {
    return cfg.op_map == OpMap::Printed ? amp_mul(a, b) : amp_add(a, b);
}

namespace {

constexpr const char* kIdentities[] = {"conjunction", "disjunction", "conjunction_offset", "negation"};
constexpr int kIdentityCount = 4;

AuditRow audit_one(const SigmaConfig& cfg, int identity, std::size_t samples, std::uint64_t row_seed) {
    rng::Stream stream(row_seed);
    const double lo = cfg.clamp;
    auto draw = [&] { return stream.uniform(lo, 1.0); };

    double max_err = 0.0;
    double sum_err = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const TruthPair a{draw(), draw()};
        const TruthPair b{draw(), draw()};
        const Amplitude za = sigma(cfg, a);
        const Amplitude zb = sigma(cfg, b);
        Amplitude lhs, rhs;
        switch (identity) {
            case 0:
                lhs = sigma(cfg, fuzzy_meet(a, b, cfg.family));
                rhs = op_for_meet(cfg, za, zb);
                break;
            case 1:
                lhs = sigma(cfg, fuzzy_join(a, b, cfg.family));
                rhs = op_for_join(cfg, za, zb);
                break;
            case 2:
                lhs = sigma(cfg, fuzzy_meet(a, b, cfg.family));
                rhs = amp_add(amp_add(za, zb), Amplitude{0.0, -1.0});
                break;
            case 3:
                lhs = sigma(cfg, fuzzy_neg(a));
                rhs = amp_neg(za);
                break;
        }
        const double err = amp_abs(amp_add(lhs, Amplitude{-rhs.re, -rhs.im}));
        max_err = std::max(max_err, err);
        sum_err += err;
    }
    return {family_name(cfg.family), family_parameter(cfg.family), cfg.convention, cfg.op_map,
            kIdentities[identity],   max_err,                      sum_err / static_cast<double>(samples),
            samples,                 row_seed};
}

AuditRow defect_row(const TNormFamily& fam, double clamp, std::size_t samples, std::uint64_t row_seed) {
    rng::Stream stream(row_seed);
    double max_err = 0.0;
    double sum_err = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const double x = stream.uniform(clamp, 1.0);
        const double y = stream.uniform(clamp, 1.0);
        const double z = stream.uniform(clamp, 1.0);
        const double d = pointwise_defect(fam, x, y, z);
        max_err = std::max(max_err, d);
        sum_err += d;
    }
    return {family_name(fam), family_parameter(fam), SigmaConvention::PureGenerator, OpMap::Printed,
            "distributivity",  max_err,              sum_err / static_cast<double>(samples),
            samples,           row_seed};
}

}  // namespace

AuditReport audit_identities(std::span<const SigmaConfig> cfgs, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("audit_identities: samples must be positive");
    AuditReport report;
    for (std::size_t c = 0; c < cfgs.size(); ++c) {
        validate(cfgs[c]);
        for (int identity = 0; identity < kIdentityCount; ++identity) {
            const std::uint64_t row_seed = rng::derive(seed, c * kIdentityCount + identity);
            report.push_back(audit_one(cfgs[c], identity, samples, row_seed));
        }
    }
    return report;
}

AuditReport sweep(std::span<const double> p_values, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("sweep: samples must be positive");
    std::vector<SigmaConfig> cfgs;
    for (double p : p_values) {
        if (!(p < 0.0)) throw std::invalid_argument("sweep: all p values must be negative");
        for (SigmaConvention conv :
             {SigmaConvention::PureGenerator, SigmaConvention::Printed, SigmaConvention::Symmetric}) {
            for (OpMap map : {OpMap::Printed, OpMap::Summary}) {
                cfgs.push_back({TNormFamily::schweizer_sklar(p), conv, map, kGeneratorFloor});
            }
        }
    }
    AuditReport report = audit_identities(cfgs, samples, seed);
    std::uint64_t extra = cfgs.size() * kIdentityCount;
    for (double p : p_values) {
        report.push_back(
            defect_row(TNormFamily::schweizer_sklar(p), kGeneratorFloor, samples, rng::derive(seed, extra++)));
    }
    report.push_back(defect_row(TNormFamily::min_max(), kGeneratorFloor, samples, rng::derive(seed, extra++)));
    return report;
}

void write_audit_csv(const AuditReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_audit_csv: cannot open " + path);
    out << "p,family,sigma_convention,op_map,identity,max_abs_err,mean_abs_err,samples,seed\n";
    for (const auto& r : report) {
        out << csv::g17(r.p) << ',' << r.family << ',' << to_string(r.convention) << ',' << to_string(r.op_map)
            << ',' << r.identity << ',' << csv::g17(r.max_abs_err) << ',' << csv::g17(r.mean_abs_err) << ','
            << r.samples << ',' << r.seed << '\n';
    }
}

}  // namespace pqbit
