#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pqbit/logic.hpp"

namespace pqbit {

/// How a kernel draw k shifts the two counts: CommonShift subtracts k from
/// both, SwapShift subtracts from n+ and adds to n-.
enum class ShiftMode { CommonShift, SwapShift };

/// Mean-zero integer kernels on [-K, K].  BinomialSymmetric draws
/// k = B1 - B2 with B1, B2 ~ Binomial(K, epsilon); DiscreteUniform is
/// uniform on [-round(epsilon*K), +round(epsilon*K)] so that epsilon = 0
/// collapses to a point mass for both kernels.
enum class NoiseKernel { BinomialSymmetric, DiscreteUniform };

std::string to_string(ShiftMode m);
std::string to_string(NoiseKernel k);
ShiftMode shift_mode_from(const std::string& s);
NoiseKernel noise_kernel_from(const std::string& s);

struct NoiseModel {
    double epsilon = 0.0;
    ShiftMode shift = ShiftMode::CommonShift;
    NoiseKernel kernel = NoiseKernel::BinomialSymmetric;
    long bound = 0;  // K; perturb enforces K <= total/4
};

void validate(const NoiseModel& nm);

/// Finite distribution over evidence counts sharing one total.
class EvidenceDistribution {
public:
    struct Point {
        Evidence counts;
        double prob = 0.0;
    };

    EvidenceDistribution(std::vector<Point> support, long total);

    const std::vector<Point>& support() const { return support_; }
    long total() const { return total_; }
    bool is_point_mass() const { return support_.size() == 1; }

    /// Exact mean of (n+, n-) under the distribution.
    std::pair<double, double> mean() const;

    /// Inverse-CDF draw; u must lie in [0,1).
    const Evidence& sample(double u) const;

private:
    std::vector<Point> support_;
    std::vector<double> cdf_;
    long total_;
};

/// Pushes evidence through the noise model.  Kernel support is truncated
/// symmetrically to the largest feasible half-width, which keeps the mean
/// exactly at the unperturbed counts.  The construction is closed-form;
/// the seed parameter is accepted for interface stability and unused.
EvidenceDistribution perturb(const NoiseModel& nm, const Evidence& e, std::uint64_t seed = 0);

/// Monte Carlo mean of the min/max meet over normalized draws from the two
/// perturbed distributions.  Arguments are exchangeable: the pair is
/// canonicalized before streams are assigned, so (a,b) and (b,a) with the
/// same seed give identical results.
TruthPair ee_meet_star(const Evidence& e1, const Evidence& e2, const NoiseModel& nm, std::size_t samples,
                       std::uint64_t seed);

/// Square surface of smoothed meet values over a [0,1] grid of first
/// components.  coords holds the count-quantized grid values n_i/total.
struct Surface {
    std::vector<double> coords;
    std::vector<double> values;  // row-major, grid x grid
    int grid = 0;
    long total = 0;

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid + j]; }
};

Surface smoothed_tnorm_surface(const NoiseModel& nm, long total, int grid, std::size_t samples,
                               std::uint64_t seed);

struct SsFit {
    double p_hat = 0.0;
    double rss = 0.0;
    bool at_bound = false;
};

inline constexpr double kFitLowerBound = -1e4;
inline constexpr double kFitUpperBound = -0.1;

/// Least-squares fit of the SS parameter to a surface via golden-section
/// search on [-1e4, -0.1].  Throws on a degenerate all-ones surface.
SsFit fit_ss_parameter(const Surface& surface);

struct EeFitRow {
    double epsilon = 0.0;
    ShiftMode shift = ShiftMode::CommonShift;
    NoiseKernel kernel = NoiseKernel::BinomialSymmetric;
    long bound = 0;
    long total = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double p_hat = 0.0;
    double fit_rss = 0.0;
    bool at_bound = false;
};

void write_ee_fit_csv(const std::vector<EeFitRow>& rows, const std::string& path);

}  // namespace pqbit
