#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "pqbit/rng.hpp"
#include "pqbit/tnorm.hpp"

using namespace pqbit;

namespace {

const TNormFamily kFamilies[] = {
    TNormFamily::min_max(),
    TNormFamily::product(),
    TNormFamily::drastic(),
    TNormFamily::schweizer_sklar(-0.5),
    TNormFamily::schweizer_sklar(-1.0),
    TNormFamily::schweizer_sklar(-8.0),
    TNormFamily::schweizer_sklar(2.0),
};

// Brute-force residuum: sup over a uniform grid of z with T(x,z) <= y.
double residuum_grid_oracle(const TNormFamily& fam, double x, double y, int grid) {
    double best = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const double z = static_cast<double>(i) / grid;
        if (tnorm(fam, x, z) <= y) best = std::max(best, z);
    }
    return best;
}

}  // namespace

TEST_CASE("boundary and zero behaviour") {
    for (const auto& fam : kFamilies) {
        for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            CHECK(tnorm(fam, x, 1.0) == x);
            CHECK(tnorm(fam, 1.0, x) == x);
            CHECK(tnorm(fam, x, 0.0) == 0.0);
            CHECK(conorm(fam, x, 0.0) == x);
            CHECK(conorm(fam, x, 1.0) == 1.0);
        }
    }
}

TEST_CASE("t-norm axioms hold on random samples") {
    rng::Stream stream(2024);
    for (const auto& fam : kFamilies) {
        for (int i = 0; i < 20000; ++i) {
            const double x = stream.uniform01();
            const double y = stream.uniform01();
            const double z = stream.uniform01();
            const double xy = tnorm(fam, x, y);
            CHECK(xy == tnorm(fam, y, x));
            CHECK(xy <= std::min(x, y) + 1e-12);
            // associativity; the SS stable form accumulates a few ulps
            CHECK(std::fabs(tnorm(fam, xy, z) - tnorm(fam, x, tnorm(fam, y, z))) <= 1e-9);
            // monotonicity in the first argument
            const double x2 = std::min(1.0, x + stream.uniform01() * (1.0 - x));
            CHECK(tnorm(fam, x2, y) >= xy - 1e-12);
            // duality, allowing an ulp for the closed-form conorms
            CHECK(std::fabs(conorm(fam, x, y) - (1.0 - tnorm(fam, 1.0 - x, 1.0 - y))) <= 1e-15);
        }
    }
}

TEST_CASE("known point values") {
    CHECK(tnorm(TNormFamily::min_max(), 0.3, 0.7) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(tnorm(TNormFamily::product(), 0.3, 0.7) == doctest::Approx(0.21).epsilon(1e-15));
    CHECK(tnorm(TNormFamily::drastic(), 0.3, 0.7) == 0.0);
    CHECK(tnorm(TNormFamily::drastic(), 1.0, 0.7) == 0.7);
    // SS p=-1: (x^-1 + y^-1 - 1)^-1
    CHECK(tnorm(TNormFamily::schweizer_sklar(-1.0), 0.5, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(tnorm(TNormFamily::schweizer_sklar(0.0), 0.5, 0.5) == 0.25);
    // nilpotent branch: p=2 at (0.5, 0.5) -> max(0, 0.25+0.25-1) = 0
    CHECK(tnorm(TNormFamily::schweizer_sklar(2.0), 0.5, 0.5) == 0.0);
    CHECK(tnorm(TNormFamily::schweizer_sklar(2.0), 0.9, 0.8) ==
          doctest::Approx(std::sqrt(0.81 + 0.64 - 1.0)).epsilon(1e-14));
}

TEST_CASE("stable SS evaluation matches the direct formula at moderate p") {
    rng::Stream stream(11);
    for (double p : {-0.5, -1.0, -2.0, -4.0, -8.0}) {
        for (int i = 0; i < 2000; ++i) {
            const double x = stream.uniform(0.05, 1.0);
            const double y = stream.uniform(0.05, 1.0);
            const double direct = std::pow(std::pow(x, p) + std::pow(y, p) - 1.0, 1.0 / p);
            CHECK(ss_tnorm_stable(p, x, y) == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("stable SS evaluation survives extreme parameters") {
    CHECK(std::isfinite(ss_tnorm_stable(-1e6, 0.3, 0.9)));
    CHECK(ss_tnorm_stable(-1e6, 0.3, 0.9) == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(std::fabs(ss_tnorm_stable(-64.0, 0.3, 0.9) - 0.3) <= 1e-3);
    CHECK(ss_tnorm_stable(-100.0, 1e-9, 0.5) >= 0.0);
    CHECK(ss_tnorm_stable(-100.0, 0.0, 0.5) == 0.0);
}

TEST_CASE("SS converges to min as p decreases") {
    double prev = 1.0;
    for (double p : {-2.0, -8.0, -32.0, -64.0}) {
        const TNormFamily fam = TNormFamily::schweizer_sklar(p);
        double worst = 0.0;
        for (int i = 0; i < 99; ++i) {
            for (int j = 0; j < 99; ++j) {
                const double x = 0.05 + 0.95 * i / 98.0;
                const double y = 0.05 + 0.95 * j / 98.0;
                worst = std::max(worst, std::fabs(tnorm(fam, x, y) - std::min(x, y)));
            }
        }
        CHECK(worst <= prev + 1e-15);
        prev = worst;
    }
    CHECK(prev <= 0.02);
}

TEST_CASE("generator values and domain") {
    const TNormFamily ss1 = TNormFamily::schweizer_sklar(-1.0);
    CHECK(generator(ss1, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(generator(ss1, 1.0) == 0.0);
    CHECK(generator(TNormFamily::product(), 1.0) == 0.0);
    CHECK(generator(TNormFamily::product(), 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(generator(TNormFamily::schweizer_sklar(0.0), 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(generator(TNormFamily::min_max(), 0.5), not_additively_generated);
    CHECK_THROWS_AS(generator(TNormFamily::drastic(), 0.5), not_additively_generated);
    CHECK_THROWS_AS(generator(ss1, 1e-12), std::domain_error);
    CHECK_THROWS_AS(generator(ss1, 1.5), std::domain_error);
}

TEST_CASE("generator round trip and representation") {
    rng::Stream stream(99);
    for (double p : {-0.5, -1.0, -4.0, 0.0, 2.0}) {
        const TNormFamily fam = p == 0.0 ? TNormFamily::product() : TNormFamily::schweizer_sklar(p);
        for (int i = 0; i < 2000; ++i) {
            const double x = stream.uniform(1e-6, 1.0);
            CHECK(generator_inverse(fam, generator(fam, x, 1e-9)) == doctest::Approx(x).epsilon(1e-12));
        }
    }
    // f^{-1}(f(x) + f(y)) reproduces the t-norm for p < 0
    const TNormFamily ss1 = TNormFamily::schweizer_sklar(-1.0);
    const double t = generator_inverse(ss1, generator(ss1, 0.7) + generator(ss1, 0.4));
    CHECK(t == doctest::Approx(tnorm(ss1, 0.7, 0.4)).epsilon(1e-12));
    CHECK(t == doctest::Approx(0.34146341463414637).epsilon(1e-12));
}

TEST_CASE("generator law is additive to 1e-9 relative") {
    rng::Stream stream(7);
    for (double p : {-0.5, -1.0, -4.0}) {
        const TNormFamily fam = TNormFamily::schweizer_sklar(p);
        for (int i = 0; i < 1000; ++i) {
            const double x = stream.uniform(0.05, 1.0);
            const double y = stream.uniform(0.05, 1.0);
            const double lhs = generator(fam, tnorm(fam, x, y));
            const double rhs = generator(fam, x) + generator(fam, y);
            CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, std::fabs(rhs)));
        }
    }
}

TEST_CASE("residuum agrees with the grid oracle") {
    const TNormFamily fams[] = {TNormFamily::min_max(), TNormFamily::product(),
                                TNormFamily::schweizer_sklar(-1.0), TNormFamily::schweizer_sklar(-4.0),
                                TNormFamily::schweizer_sklar(2.0)};
    rng::Stream stream(5);
    for (const auto& fam : fams) {
        for (int i = 0; i < 200; ++i) {
            const double x = stream.uniform01();
            const double y = stream.uniform01();
            const double grid = residuum_grid_oracle(fam, x, y, 10000);
            CHECK(std::fabs(residuum(fam, x, y) - grid) <= 2e-4);
        }
    }
    CHECK(residuum(TNormFamily::min_max(), 0.7, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(residuum(TNormFamily::product(), 0.5, 0.3) == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("residuum adjointness and edge cases") {
    rng::Stream stream(6);
    const TNormFamily fams[] = {TNormFamily::min_max(), TNormFamily::product(),
                                TNormFamily::schweizer_sklar(-2.0), TNormFamily::schweizer_sklar(-64.0)};
    for (const auto& fam : fams) {
        for (int i = 0; i < 5000; ++i) {
            const double x = stream.uniform01();
            const double y = stream.uniform01();
            const double r = residuum(fam, x, y);
            CHECK(tnorm(fam, x, r) <= y + 1e-12);
            if (x <= y) CHECK(r == 1.0);
        }
    }
    CHECK(residuum(TNormFamily::schweizer_sklar(-1.0), 0.5, 0.0) == 0.0);
    CHECK(residuum(TNormFamily::schweizer_sklar(-400.0), 0.6, 0.5999999) <= 1.0);
    CHECK_THROWS_AS(residuum(TNormFamily::drastic(), 0.5, 0.3), std::domain_error);
}

TEST_CASE("distributivity defect") {
    const DefectReport minmax = distributivity_defect(TNormFamily::min_max(), 50);
    CHECK(minmax.max_defect == 0.0);
    CHECK(minmax.mean_defect == 0.0);

    CHECK(pointwise_defect(TNormFamily::product(), 0.5, 0.5, 0.5) == doctest::Approx(0.0625).epsilon(1e-14));

    const DefectReport loose = distributivity_defect(TNormFamily::schweizer_sklar(-2.0), 30);
    const DefectReport tight = distributivity_defect(TNormFamily::schweizer_sklar(-32.0), 30);
    CHECK(tight.max_defect < loose.max_defect);

    CHECK_THROWS_AS(distributivity_defect(TNormFamily::min_max(), 1), std::invalid_argument);
}

TEST_CASE("defect CSV serialization") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "pqbit_defect_test.csv";
    write_defect_csv({distributivity_defect(TNormFamily::min_max(), 5),
                      distributivity_defect(TNormFamily::schweizer_sklar(-2.0), 5)},
                     path.string());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "family,p,grid,max_defect,mean_defect");
    std::string row;
    std::getline(in, row);
    CHECK(row.rfind("minmax,-inf,5,0,0", 0) == 0);
    std::getline(in, row);
    CHECK(row.rfind("ss,-2,5,", 0) == 0);
    fs::remove(path);
}

TEST_CASE("family metadata") {
    CHECK(family_name(TNormFamily::min_max()) == "minmax");
    CHECK(family_name(TNormFamily::schweizer_sklar(-3.0)) == "ss");
    CHECK(family_parameter(TNormFamily::min_max()) == -std::numeric_limits<double>::infinity());
    CHECK(family_parameter(TNormFamily::drastic()) == std::numeric_limits<double>::infinity());
    CHECK(family_parameter(TNormFamily::product()) == 0.0);
    CHECK(family_parameter(TNormFamily::schweizer_sklar(-3.0)) == -3.0);
}

TEST_CASE("inputs outside the unit interval are rejected") {
    CHECK_THROWS_AS(tnorm(TNormFamily::product(), -0.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(tnorm(TNormFamily::product(), 0.1, 1.5), std::domain_error);
    CHECK_THROWS_AS(conorm(TNormFamily::min_max(), 2.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(residuum(TNormFamily::min_max(), -1.0, 0.5), std::domain_error);
}
