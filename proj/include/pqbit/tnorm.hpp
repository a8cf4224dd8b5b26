#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pqbit {

/// Thrown when an additive generator is requested for a family that has
/// none (min/max, drastic).
struct not_additively_generated : std::domain_error {
    explicit not_additively_generated(const std::string& what) : std::domain_error(what) {}
};

enum class TNormKind { MinMax, Product, SchweizerSklar, Drastic };

/// A parametric t-norm family.  `p` is meaningful only for Schweizer-Sklar;
/// p = 0 evaluates identically to Product, p < 0 gives the strict family
/// that tends to min as p -> -inf, p > 0 the nilpotent branch.
struct TNormFamily {
    TNormKind kind = TNormKind::MinMax;
    double p = 0.0;

    static constexpr TNormFamily min_max() { return {TNormKind::MinMax, 0.0}; }
    static constexpr TNormFamily product() { return {TNormKind::Product, 0.0}; }
    static constexpr TNormFamily schweizer_sklar(double p) { return {TNormKind::SchweizerSklar, p}; }
    static constexpr TNormFamily drastic() { return {TNormKind::Drastic, 0.0}; }

    bool operator==(const TNormFamily&) const = default;
};

/// Short lowercase family name used in CSV output and CLI flags.
std::string family_name(const TNormFamily& fam);

/// Limit parameter for non-SS families: -inf for min/max, 0 for product,
/// +inf for drastic.  Keeps the `p` column of reports numeric.
double family_parameter(const TNormFamily& fam);

double tnorm(const TNormFamily& fam, double x, double y);
double conorm(const TNormFamily& fam, double x, double y);

/// Default floor below which generator arguments are rejected.
inline constexpr double kGeneratorFloor = 1e-9;

/// Additive generator f of the family: -log(x) for product (and SS p=0),
/// (1 - x^p)/p otherwise.  Throws not_additively_generated for min/max and
/// drastic, std::domain_error for x outside [floor, 1].
double generator(const TNormFamily& fam, double x, double floor = kGeneratorFloor);

/// Pseudo-inverse of the generator; total on u >= 0.
double generator_inverse(const TNormFamily& fam, double u);

/// Log-domain evaluation of the Schweizer-Sklar t-norm for p < 0.  Stable
/// for p down to -1e6; returns exact boundary values at 0 and 1 inputs.
double ss_tnorm_stable(double p, double x, double y);

/// Residuum R(x,y) = sup{ z : T(x,z) <= y }.  Unsupported (throws) for the
/// drastic family, which is not left-continuous.
double residuum(const TNormFamily& fam, double x, double y);

/// |T(x, S(y,z)) - S(T(x,y), T(x,z))| at a single point.
double pointwise_defect(const TNormFamily& fam, double x, double y, double z);

struct DefectReport {
    TNormFamily family;
    int grid = 0;
    double max_defect = 0.0;
    double mean_defect = 0.0;
};

/// Max and mean distributivity defect over a grid^3 lattice on [0,1]^3.
DefectReport distributivity_defect(const TNormFamily& fam, int grid);

/// Writes defect reports as CSV (family,p,grid,max_defect,mean_defect).
void write_defect_csv(const std::vector<DefectReport>& reports, const std::string& path);

}  // namespace pqbit
