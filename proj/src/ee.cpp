#include "pqbit/ee.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "pqbit/csv.hpp"
#include "pqbit/rng.hpp"

namespace pqbit {

std::string to_string(ShiftMode m) {
    return m == ShiftMode::CommonShift ? "common_shift" : "swap_shift";
}

std::string to_string(NoiseKernel k) {
    return k == NoiseKernel::BinomialSymmetric ? "binomial_symmetric" : "discrete_uniform";
}

ShiftMode shift_mode_from(const std::string& s) {
    if (s == "common_shift" || s == "common") return ShiftMode::CommonShift;
    if (s == "swap_shift" || s == "swap") return ShiftMode::SwapShift;
    throw std::invalid_argument("unknown shift mode: " + s);
}

NoiseKernel noise_kernel_from(const std::string& s) {
    if (s == "binomial_symmetric" || s == "binomial") return NoiseKernel::BinomialSymmetric;
    if (s == "discrete_uniform" || s == "uniform") return NoiseKernel::DiscreteUniform;
    throw std::invalid_argument("unknown noise kernel: " + s);
}

void validate(const NoiseModel& nm) {
    if (!(nm.epsilon >= 0.0 && nm.epsilon < 1.0)) {
        throw std::invalid_argument("NoiseModel: epsilon must lie in [0,1)");
    }
    if (nm.bound < 0) throw std::invalid_argument("NoiseModel: bound must be non-negative");
}

EvidenceDistribution::EvidenceDistribution(std::vector<Point> support, long total)
    : support_(std::move(support)), total_(total) {
    if (support_.empty()) throw std::invalid_argument("EvidenceDistribution: empty support");
    cdf_.reserve(support_.size());
    double acc = 0.0;
    for (const Point& pt : support_) {
        validate(pt.counts);
        if (pt.counts.total != total_) {
            throw std::invalid_argument("EvidenceDistribution: support totals disagree");
        }
        acc += pt.prob;
        cdf_.push_back(acc);
    }
    if (std::fabs(acc - 1.0) > 1e-12) {
        throw std::invalid_argument("EvidenceDistribution: probabilities must sum to 1");
    }
    cdf_.back() = 1.0;
}

std::pair<double, double> EvidenceDistribution::mean() const {
    double mp = 0.0;
    double mm = 0.0;
    for (const Point& pt : support_) {
        mp += pt.prob * static_cast<double>(pt.counts.n_plus);
        mm += pt.prob * static_cast<double>(pt.counts.n_minus);
    }
    return {mp, mm};
}

const Evidence& EvidenceDistribution::sample(double u) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const std::size_t idx = std::min(static_cast<std::size_t>(it - cdf_.begin()), support_.size() - 1);
    return support_[idx].counts;
}

namespace {

// Binomial(K, eps) pmf via the stable ratio recurrence.
std::vector<double> binomial_pmf(long k, double eps) {
    std::vector<double> pmf(static_cast<std::size_t>(k) + 1, 0.0);
    if (eps == 0.0) {
        pmf[0] = 1.0;
        return pmf;
    }
    // Start from the largest term to avoid underflow of (1-eps)^K for
    // extreme parameters, then normalize.
    const long mode = std::clamp(static_cast<long>(std::floor((k + 1) * eps)), 0L, k);
    pmf[mode] = 1.0;
    for (long j = mode; j < k; ++j) {
        pmf[j + 1] = pmf[j] * (static_cast<double>(k - j) / static_cast<double>(j + 1)) * (eps / (1.0 - eps));
    }
    for (long j = mode; j > 0; --j) {
        pmf[j - 1] = pmf[j] * (static_cast<double>(j) / static_cast<double>(k - j + 1)) * ((1.0 - eps) / eps);
    }
    const double sum = std::accumulate(pmf.begin(), pmf.end(), 0.0);
    for (double& v : pmf) v /= sum;
    return pmf;
}

// Symmetric kernel pmf on offsets [-half, half], index i <-> k = i - half.
std::vector<double> kernel_pmf(const NoiseModel& nm, long half) {
    std::vector<double> q(static_cast<std::size_t>(2 * half) + 1, 0.0);
    if (nm.kernel == NoiseKernel::DiscreteUniform) {
        const double w = 1.0 / static_cast<double>(2 * half + 1);
        for (double& v : q) v = w;
        return q;
    }
    const std::vector<double> b = binomial_pmf(nm.bound, nm.epsilon);
    for (long k = -half; k <= half; ++k) {
        double acc = 0.0;
        for (long j = 0; j <= nm.bound; ++j) {
            const long i = j + k;
            if (i >= 0 && i <= nm.bound) acc += b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
        }
        q[static_cast<std::size_t>(k + half)] = acc;
    }
    const double sum = std::accumulate(q.begin(), q.end(), 0.0);
    for (double& v : q) v /= sum;
    return q;
}

}  // namespace

EvidenceDistribution perturb(const NoiseModel& nm, const Evidence& e, std::uint64_t) {
    validate(nm);
    validate(e);
    if (nm.bound > e.total / 4) {
        throw std::invalid_argument("perturb: bound exceeds total/4");
    }
    // Largest half-width that keeps every shifted count inside [0, total].
    // Truncating symmetrically preserves the zero mean of the kernel, hence
    // the mean of the perturbed counts.
    long kernel_half = nm.bound;
    if (nm.kernel == NoiseKernel::DiscreteUniform) {
        kernel_half = std::lround(nm.epsilon * static_cast<double>(nm.bound));
    }
    long half = kernel_half;
    if (nm.shift == ShiftMode::CommonShift) {
        half = std::min({half, e.n_plus, e.n_minus, e.total - e.n_plus, e.total - e.n_minus});
    } else {
        half = std::min({half, e.n_plus, e.total - e.n_plus, e.n_minus, e.total - e.n_minus});
    }
    half = std::max(half, 0L);

    std::vector<double> q;
    if (half == 0) {
        q = {1.0};
    } else if (half == kernel_half) {
        q = kernel_pmf(nm, half);
    } else {
        std::vector<double> full = kernel_pmf(nm, kernel_half);
        q.assign(full.begin() + (kernel_half - half), full.begin() + (kernel_half + half + 1));
        const double sum = std::accumulate(q.begin(), q.end(), 0.0);
        for (double& v : q) v /= sum;
    }

    std::vector<EvidenceDistribution::Point> support;
    support.reserve(q.size());
    double kept = 0.0;
    for (long k = -half; k <= half; ++k) {
        const double prob = q[static_cast<std::size_t>(k + half)];
        if (prob <= 0.0) continue;  // keeps epsilon = 0 an honest point mass
        const long np = e.n_plus - k;
        const long nm_count = nm.shift == ShiftMode::CommonShift ? e.n_minus - k : e.n_minus + k;
        support.push_back({Evidence{np, nm_count, e.total}, prob});
        kept += prob;
    }
    for (auto& pt : support) pt.prob /= kept;
    return EvidenceDistribution(std::move(support), e.total);
}

TruthPair ee_meet_star(const Evidence& e1, const Evidence& e2, const NoiseModel& nm, std::size_t samples,
                       std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("ee_meet_star: samples must be positive");
    // The estimator is symmetric in its arguments; canonicalizing the order
    // makes (a,b) and (b,a) with the same seed bit-identical.
    auto key = [](const Evidence& e) { return std::tuple(e.n_plus, e.n_minus, e.total); };
    const Evidence& a = key(e1) <= key(e2) ? e1 : e2;
    const Evidence& b = key(e1) <= key(e2) ? e2 : e1;

    const EvidenceDistribution da = perturb(nm, a, rng::derive(seed, 1));
    const EvidenceDistribution db = perturb(nm, b, rng::derive(seed, 2));
    const TNormFamily minmax = TNormFamily::min_max();

    if (da.is_point_mass() && db.is_point_mass()) {
        return fuzzy_meet(normalize(a), normalize(b), minmax);
    }

    constexpr std::size_t kBatch = 8192;
    double sum_plus = 0.0;
    double sum_minus = 0.0;
    std::size_t done = 0;
    std::uint64_t batch_index = 0;
    while (done < samples) {
        const std::size_t n = std::min(kBatch, samples - done);
        rng::Stream stream(rng::derive(seed, 0x100 + batch_index));
        double bp = 0.0;
        double bm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const TruthPair wa = normalize(da.sample(stream.uniform01()));
            const TruthPair wb = normalize(db.sample(stream.uniform01()));
            bp += std::min(wa.w_plus, wb.w_plus);
            bm += std::max(wa.w_minus, wb.w_minus);
        }
        sum_plus += bp;
        sum_minus += bm;
        done += n;
        ++batch_index;
    }
    const double inv = 1.0 / static_cast<double>(samples);
    return {sum_plus * inv, sum_minus * inv};
}

Surface smoothed_tnorm_surface(const NoiseModel& nm, long total, int grid, std::size_t samples,
                               std::uint64_t seed) {
    if (grid < 2) throw std::invalid_argument("smoothed_tnorm_surface: grid must be >= 2");
    if (total <= 0) throw std::invalid_argument("smoothed_tnorm_surface: total must be positive");
    Surface s;
    s.grid = grid;
    s.total = total;
    s.coords.resize(grid);
    s.values.assign(static_cast<std::size_t>(grid) * grid, 0.0);

    std::vector<Evidence> evidence(grid);
    for (int i = 0; i < grid; ++i) {
        const long np = std::lround(static_cast<double>(i) / (grid - 1) * static_cast<double>(total));
        evidence[i] = Evidence{np, total - np, total};
        s.coords[i] = static_cast<double>(np) / static_cast<double>(total);
    }

    for (int i = 0; i < grid; ++i) {
        for (int j = i; j < grid; ++j) {
            const std::uint64_t cell_seed = rng::derive(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
            const double v = ee_meet_star(evidence[i], evidence[j], nm, samples, cell_seed).w_plus;
            s.values[static_cast<std::size_t>(i) * grid + j] = v;
            s.values[static_cast<std::size_t>(j) * grid + i] = v;
        }
    }
    return s;
}

namespace {

double surface_rss(const Surface& s, double p) {
    const TNormFamily fam = TNormFamily::schweizer_sklar(p);
    double rss = 0.0;
    for (int i = 0; i < s.grid; ++i) {
        for (int j = 0; j < s.grid; ++j) {
            const double d = tnorm(fam, s.coords[i], s.coords[j]) - s.at(i, j);
            rss += d * d;
        }
    }
    return rss;
}

}  // namespace

SsFit fit_ss_parameter(const Surface& surface) {
    if (surface.grid < 2) throw std::invalid_argument("fit_ss_parameter: degenerate surface");
    bool all_ones = true;
    for (double v : surface.values) {
        if (std::fabs(v - 1.0) > 1e-12) {
            all_ones = false;
            break;
        }
    }
    if (all_ones) throw std::invalid_argument("fit_ss_parameter: degenerate all-ones surface");

    constexpr double kRatio = 0.6180339887498949;
    double a = kFitLowerBound;
    double b = kFitUpperBound;
    double x1 = b - kRatio * (b - a);
    double x2 = a + kRatio * (b - a);
    double f1 = surface_rss(surface, x1);
    double f2 = surface_rss(surface, x2);
    while (b - a > 1e-7 * (std::fabs(a) + std::fabs(b)) + 1e-9) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kRatio * (b - a);
            f1 = surface_rss(surface, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kRatio * (b - a);
            f2 = surface_rss(surface, x2);
        }
    }
    SsFit fit;
    fit.p_hat = f1 < f2 ? x1 : x2;
    fit.rss = std::min(f1, f2);
    fit.at_bound = fit.p_hat < kFitLowerBound * 0.999 || fit.p_hat > kFitUpperBound * 1.001;
    return fit;
}

void write_ee_fit_csv(const std::vector<EeFitRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_ee_fit_csv: cannot open " + path);
    out << "epsilon,shift_mode,kernel,K,N,samples,seed,p_hat,fit_rss,at_bound\n";
    for (const auto& r : rows) {
        out << csv::g17(r.epsilon) << ',' << to_string(r.shift) << ',' << to_string(r.kernel) << ',' << r.bound
            << ',' << r.total << ',' << r.samples << ',' << r.seed << ',' << csv::g17(r.p_hat) << ','
            << csv::g17(r.fit_rss) << ',' << (r.at_bound ? 1 : 0) << '\n';
    }
}

}  // namespace pqbit
