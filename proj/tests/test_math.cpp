#include <doctest.h>

#include <cmath>

#include "scorm/error.hpp"
#include "scorm/math.hpp"

using namespace scorm;

TEST_CASE("normal cdf/quantile round trip") {
    // The deep lower tail keeps full relative precision in p. On the
    // upper side 1 - p quantizes at ~1e-16, which caps the recoverable
    // precision of z; the strict round trip stops at 4.5 and a looser
    // one covers the saturating region.
    for (double z = -8.0; z <= 4.5; z += 0.37) {
        double p = math::normal_cdf(z);
        CHECK(math::normal_quantile(p) == doctest::Approx(z).epsilon(1e-11));
    }
    for (double z = 4.5; z <= 7.0; z += 0.37) {
        double p = math::normal_cdf(z);
        CHECK(math::normal_quantile(p) == doctest::Approx(z).epsilon(1e-4));
    }
    CHECK(math::normal_cdf(0.0) == doctest::Approx(0.5));
    CHECK(math::normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK_THROWS_AS(math::normal_quantile(-0.1), Error);
}

TEST_CASE("chi-square survival function against closed forms") {
    // df = 2: sf(x) = exp(-x/2).
    for (double x : {0.5, 1.0, 3.0, 10.0, 40.0})
        CHECK(math::chi_square_sf(x, 2) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-12));
    // df = 1: sf(x) = erfc(sqrt(x/2)).
    for (double x : {0.2, 1.0, 5.0, 15.0})
        CHECK(math::chi_square_sf(x, 1) ==
              doctest::Approx(std::erfc(std::sqrt(x / 2))).epsilon(1e-12));
    // df = 4: sf(x) = (1 + x/2) exp(-x/2).
    for (double x : {0.5, 2.0, 9.0})
        CHECK(math::chi_square_sf(x, 4) ==
              doctest::Approx((1 + x / 2) * std::exp(-x / 2)).epsilon(1e-12));
    CHECK(math::chi_square_sf(0.0, 7) == 1.0);
}

TEST_CASE("golden section finds the minimum") {
    double x = math::golden_section_minimize([](double t) { return (t - 2.5) * (t - 2.5); },
                                             0.0, 10.0);
    CHECK(x == doctest::Approx(2.5).epsilon(1e-8));
}

TEST_CASE("nelder-mead minimizes rosenbrock") {
    auto rosenbrock = [](std::span<const double> v) {
        double a = 1.0 - v[0];
        double b = v[1] - v[0] * v[0];
        return a * a + 100.0 * b * b;
    };
    std::vector<double> start = {-1.2, 1.0};
    std::vector<double> scale = {0.5, 0.5};
    auto res = math::nelder_mead(rosenbrock, start, scale, 1e-12, 5000);
    // One restart from the converged point, as the fitters do.
    res = math::nelder_mead(rosenbrock, res.x, scale, 1e-12, 5000);
    CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(res.x[1] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("mean and variance") {
    std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
    CHECK(math::mean(xs) == doctest::Approx(2.5));
    CHECK(math::variance(xs) == doctest::Approx(1.25));
    CHECK_THROWS_AS(math::mean(std::vector<double>{}), Error);
}
