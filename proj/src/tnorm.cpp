#include "pqbit/tnorm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "pqbit/csv.hpp"

namespace pqbit {

namespace {

void check_unit(double v, const char* who) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::domain_error(std::string(who) + ": argument outside [0,1]");
    }
}

}  // namespace

std::string family_name(const TNormFamily& fam) {
    switch (fam.kind) {
        case TNormKind::MinMax: return "minmax";
        case TNormKind::Product: return "product";
        case TNormKind::SchweizerSklar: return "ss";
        case TNormKind::Drastic: return "drastic";
    }
    return "unknown";
}

double family_parameter(const TNormFamily& fam) {
    switch (fam.kind) {
        case TNormKind::MinMax: return -std::numeric_limits<double>::infinity();
        case TNormKind::Product: return 0.0;
        case TNormKind::SchweizerSklar: return fam.p;
        case TNormKind::Drastic: return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

double ss_tnorm_stable(double p, double x, double y) {
    if (!(p < 0.0)) throw std::domain_error("ss_tnorm_stable: requires p < 0");
    check_unit(x, "ss_tnorm_stable");
    check_unit(y, "ss_tnorm_stable");
    if (x == 0.0 || y == 0.0) return 0.0;
    if (x == 1.0) return y;
    if (y == 1.0) return x;
    // x^p + y^p - 1 evaluated as exp(c) * (e^{a-c} + e^{b-c} - e^{-c}) with
    // a = p log x, b = p log y, c = max(a,b).  The bracket stays in [1,2],
    // so nothing overflows even for p near -1e6.
    const double a = p * std::log(x);
    const double b = p * std::log(y);
    const double c = std::max(a, b);
    const double s = std::exp(a - c) + std::exp(b - c) - std::exp(-c);
    const double t = std::exp((c + std::log(s)) / p);
    return std::min(t, std::min(x, y));
}

double tnorm(const TNormFamily& fam, double x, double y) {
    check_unit(x, "tnorm");
    check_unit(y, "tnorm");
    switch (fam.kind) {
        case TNormKind::MinMax:
            return std::min(x, y);
        case TNormKind::Product:
            return x * y;
        case TNormKind::Drastic:
            if (x == 1.0) return y;
            if (y == 1.0) return x;
            return 0.0;
        case TNormKind::SchweizerSklar: {
            const double p = fam.p;
            if (!std::isfinite(p)) throw std::domain_error("tnorm: SS parameter must be finite");
            if (p == 0.0) return x * y;
            if (p < 0.0) return ss_tnorm_stable(p, x, y);
            if (x == 1.0) return y;
            if (y == 1.0) return x;
            if (x == 0.0 || y == 0.0) return 0.0;
            const double v = std::pow(x, p) + std::pow(y, p) - 1.0;
            if (v <= 0.0) return 0.0;
            return std::min(std::pow(v, 1.0 / p), std::min(x, y));
        }
    }
    throw std::logic_error("tnorm: bad family kind");
}

double conorm(const TNormFamily& fam, double x, double y) {
    check_unit(x, "conorm");
    check_unit(y, "conorm");
    // Closed duals where they are exact in floating point; 1 - T(1-x, 1-y)
    // double-rounds, which would leave the min/max distributivity defect at
    // a few ulps instead of zero.
    switch (fam.kind) {
        case TNormKind::MinMax:
            return std::max(x, y);
        case TNormKind::Product:
            return std::min(1.0, x + y - x * y);
        case TNormKind::Drastic:
            if (x == 0.0) return y;
            if (y == 0.0) return x;
            return 1.0;
        case TNormKind::SchweizerSklar:
            if (fam.p == 0.0) return std::min(1.0, x + y - x * y);
            return 1.0 - tnorm(fam, 1.0 - x, 1.0 - y);
    }
    throw std::logic_error("conorm: bad family kind");
}

double generator(const TNormFamily& fam, double x, double floor) {
    if (fam.kind == TNormKind::MinMax || fam.kind == TNormKind::Drastic) {
        throw not_additively_generated("generator: " + family_name(fam) + " has no additive generator");
    }
    if (!std::isfinite(x) || x > 1.0) throw std::domain_error("generator: argument outside [floor, 1]");
    if (x < floor) throw std::domain_error("generator: argument below clamp floor");
    const double p = fam.kind == TNormKind::Product ? 0.0 : fam.p;
    if (p == 0.0) return -std::log(x);
    return (1.0 - std::pow(x, p)) / p;
}

double generator_inverse(const TNormFamily& fam, double u) {
    if (fam.kind == TNormKind::MinMax || fam.kind == TNormKind::Drastic) {
        throw not_additively_generated("generator_inverse: " + family_name(fam) + " has no additive generator");
    }
    if (!std::isfinite(u) || u < 0.0) throw std::domain_error("generator_inverse: argument must be finite and >= 0");
    const double p = fam.kind == TNormKind::Product ? 0.0 : fam.p;
    if (p == 0.0) return std::exp(-u);
    const double v = 1.0 - p * u;
    if (v <= 0.0) return 0.0;  // pseudo-inverse cutoff, reachable only for p > 0
    return std::min(std::pow(v, 1.0 / p), 1.0);
}

double residuum(const TNormFamily& fam, double x, double y) {
    check_unit(x, "residuum");
    check_unit(y, "residuum");
    if (fam.kind == TNormKind::Drastic) {
        throw std::domain_error("residuum: unsupported for the drastic family");
    }
    if (x <= y) return 1.0;
    switch (fam.kind) {
        case TNormKind::MinMax:
            return y;
        case TNormKind::Product:
            return y / x;
        case TNormKind::SchweizerSklar: {
            const double p = fam.p;
            if (!std::isfinite(p)) throw std::domain_error("residuum: SS parameter must be finite");
            if (p == 0.0) return y / x;
            if (p > 0.0) {
                const double v = 1.0 - std::pow(x, p) + std::pow(y, p);
                if (v <= 0.0) return 0.0;
                return std::min(std::pow(v, 1.0 / p), 1.0);
            }
            if (y == 0.0) return 0.0;  // T(x,z) = 0 only at z = 0 when p < 0
            // (1 + y^p - x^p)^{1/p} = y * w^{1/p} with w = y^{-p} + 1 - (x/y)^p,
            // which stays bounded for arbitrarily large |p|.
            const double t1 = std::exp(-p * std::log(y));
            const double t2 = std::exp(p * (std::log(x) - std::log(y)));
            const double w = t1 + 1.0 - t2;
            if (w <= 0.0) return 1.0;
            return std::min(y * std::exp(std::log(w) / p), 1.0);
        }
        case TNormKind::Drastic:
            break;
    }
    throw std::logic_error("residuum: bad family kind");
}

double pointwise_defect(const TNormFamily& fam, double x, double y, double z) {
    const double lhs = tnorm(fam, x, conorm(fam, y, z));
    const double rhs = conorm(fam, tnorm(fam, x, y), tnorm(fam, x, z));
    return std::fabs(lhs - rhs);
}

DefectReport distributivity_defect(const TNormFamily& fam, int grid) {
    if (grid < 2) throw std::invalid_argument("distributivity_defect: grid must be >= 2");
    const double step = 1.0 / (grid - 1);
    double max_defect = 0.0;
    double sum = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double x = i * step;
        for (int j = 0; j < grid; ++j) {
            const double y = j * step;
            for (int k = 0; k < grid; ++k) {
                const double d = pointwise_defect(fam, x, y, k * step);
                max_defect = std::max(max_defect, d);
                sum += d;
            }
        }
    }
    const double cells = static_cast<double>(grid) * grid * grid;
    return {fam, grid, max_defect, sum / cells};
}

void write_defect_csv(const std::vector<DefectReport>& reports, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_defect_csv: cannot open " + path);
    out << "family,p,grid,max_defect,mean_defect\n";
    for (const auto& r : reports) {
        out << family_name(r.family) << ',' << csv::g17(family_parameter(r.family)) << ',' << r.grid << ','
            << csv::g17(r.max_defect) << ',' << csv::g17(r.mean_defect) << '\n';
    }
}

}  // namespace pqbit
