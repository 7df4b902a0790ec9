#include <doctest.h>

#include "oracles.hpp"
#include "scorm/error.hpp"
#include "scorm/fit.hpp"
#include "scorm/fixture.hpp"
#include "scorm/gof.hpp"

using namespace scorm;

namespace {
std::vector<double> fixture_sizes() {
    std::vector<double> sizes;
    for (const auto& b : fixture::steam_trap_batches())
        sizes.push_back(static_cast<double>(b.size));
    return sizes;
}
} // namespace

TEST_CASE("gof bin structure") {
    HpdParams p = oracle::case_study_params();
    auto sizes = fixture_sizes();
    auto gof = chi_square_gof(sizes, p, 5);

    // Moore's rule at n = 81 gives 12 equal-probability bins.
    CHECK(gof.bins.size() == 12);
    CHECK(gof.degrees_of_freedom == 12 - 1 - 5);
    std::size_t total = 0;
    for (const auto& b : gof.bins) {
        CHECK(b.expected == doctest::Approx(81.0 / 12.0));
        CHECK(b.expected >= 5.0);
        total += b.observed;
    }
    CHECK(total == sizes.size());
    CHECK(gof.p_value >= 0.0);
    CHECK(gof.p_value <= 1.0);

    auto forced = chi_square_gof(sizes, p, 5, 8);
    CHECK(forced.bins.size() == 8);
    CHECK(forced.degrees_of_freedom == 2);
}

TEST_CASE("gof rejects a grossly wrong model") {
    HpdParams p = oracle::case_study_params();
    std::vector<double> degenerate(200, p.mu);
    auto gof = chi_square_gof(degenerate, p, 0);
    CHECK(gof.p_value < 0.01);
}

TEST_CASE("gof does not reject the mle fit of the bundled data") {
    auto sizes = fixture_sizes();
    HpdFitOptions opt;
    opt.strategy = FitStrategy::ComponentMle;
    auto fit = fit_hpd(sizes, opt);
    auto gof = chi_square_gof(sizes, fit.params, 5);
    CHECK(gof.p_value > 0.05);
}

TEST_CASE("gof is calibrated under the null") {
    // True-parameter datasets: no estimated parameters, so the statistic
    // is chi-square with bins-1 degrees of freedom. A slice here; the
    // full 100-seed rate check runs in the acceptance suite.
    HpdParams p = oracle::case_study_params();
    int rejections = 0;
    for (unsigned seed = 777000; seed < 777020; ++seed) {
        auto draws = hpd_sample(p, 5000, seed);
        auto gof = chi_square_gof(draws, p, 0);
        if (gof.p_value < 0.05) ++rejections;
    }
    CHECK(rejections <= 4);
}

TEST_CASE("gof input validation") {
    HpdParams p = oracle::case_study_params();
    std::vector<double> few(10, 3.0);
    CHECK_THROWS_AS(chi_square_gof(few, p, 0), Error);

    auto sizes = fixture_sizes();
    // 81/5 = 16 bins maximum; df would need bins >= 17 for 15 params.
    CHECK_THROWS_AS(chi_square_gof(sizes, p, 16), Error);
}
