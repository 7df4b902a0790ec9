#include <doctest.h>

#include <cmath>

#include "scorm/cost.hpp"
#include "scorm/error.hpp"
#include "scorm/fixture.hpp"

using namespace scorm;

TEST_CASE("core cost curve") {
    CHECK(core_cost(1.0, 500.0, 0.64) == 0.0);
    CHECK(core_cost(0.0, 500.0, 0.64) == 500.0);
    // Independent evaluation of 500 * (1 - 0.5^0.64).
    double expected = 500.0 * (1.0 - std::exp(0.64 * std::log(0.5)));
    CHECK(core_cost(0.5, 500.0, 0.64) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(core_cost(0.5, 500.0, 0.64) == doctest::Approx(179.13).epsilon(1e-3));
    CHECK_THROWS_AS(core_cost(-0.01, 500.0, 0.64), Error);
    CHECK_THROWS_AS(core_cost(1.01, 500.0, 0.64), Error);

    // Nonincreasing in quality, bounded by [0, a0].
    double prev = core_cost(0.0, 120.0, 1.7);
    for (double q = 0.01; q <= 1.0; q += 0.01) {
        double c = core_cost(q, 120.0, 1.7);
        CHECK(c <= prev + 1e-12);
        CHECK(c >= 0.0);
        CHECK(c <= 120.0);
        prev = c;
    }
}

TEST_CASE("theta least squares") {
    auto make_pairs = [](double a0, double theta) {
        std::vector<std::pair<double, double>> pairs;
        for (int i = 1; i <= 40; ++i) {
            double q = static_cast<double>(i) / 41.0;
            pairs.push_back({q, core_cost(q, a0, theta)});
        }
        return pairs;
    };

    SUBCASE("noiseless recovery at the case-study exponents") {
        for (double theta : {0.64, 0.76}) {
            double fitted = fit_theta(make_pairs(500.0, theta), 500.0);
            CHECK(std::fabs(fitted - theta) < 1e-6);
        }
    }
    SUBCASE("refitting the fitted curve is a projection") {
        double first = fit_theta(make_pairs(500.0, 1.3), 500.0);
        double second = fit_theta(make_pairs(500.0, first), 500.0);
        CHECK(std::fabs(second - first) < 1e-8);
    }
    SUBCASE("joint a0/theta fit") {
        auto fit = fit_cost_curve(make_pairs(500.0, 0.64));
        CHECK(fit.a0 == doctest::Approx(500.0).epsilon(1e-6));
        CHECK(fit.theta == doctest::Approx(0.64).epsilon(1e-5));
    }
    SUBCASE("degenerate inputs") {
        std::vector<std::pair<double, double>> ends = {{0.0, 500.0}, {1.0, 0.0}, {1.0, 0.0}};
        try {
            fit_theta(ends, 500.0);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Unidentifiable);
        }
        std::vector<std::pair<double, double>> one = {{0.5, 100.0}, {1.0, 0.0}};
        try {
            fit_theta(one, 500.0);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::InsufficientData);
        }
    }
}

TEST_CASE("batch and total cost") {
    CostParams params{500.0, 0.64, 500.0, 0.76};
    std::vector<double> like_new = {1.0, 1.0, 1.0};
    CHECK(batch_cost(like_new, params, RegimeLabel::normal) == 0.0);
    std::vector<double> worst = {0.0};
    CHECK(batch_cost(worst, params, RegimeLabel::normal) == 500.0);

    std::vector<double> three(3, 0.5);
    CHECK(batch_cost(three, params, RegimeLabel::normal) ==
          doctest::Approx(3.0 * core_cost(0.5, 500.0, 0.64)).epsilon(1e-14));
    // The extreme regime uses its own exponent.
    CHECK(batch_cost(three, params, RegimeLabel::extreme) ==
          doctest::Approx(3.0 * core_cost(0.5, 500.0, 0.76)).epsilon(1e-14));

    std::vector<std::pair<std::vector<double>, RegimeLabel>> batches = {
        {{0.5, 0.6}, RegimeLabel::normal},
        {{0.2}, RegimeLabel::normal},
    };
    auto split = total_cost(batches, params);
    CHECK(split.extreme_part == 0.0);
    CHECK(split.total == doctest::Approx(split.normal_part));

    batches.push_back({{0.9, 0.1}, RegimeLabel::extreme});
    auto split2 = total_cost(batches, params);
    CHECK(split2.total == doctest::Approx(split2.normal_part + split2.extreme_part));

    // Additivity over concatenation.
    std::vector<std::pair<std::vector<double>, RegimeLabel>> first(batches.begin(),
                                                                   batches.begin() + 1);
    std::vector<std::pair<std::vector<double>, RegimeLabel>> rest(batches.begin() + 1,
                                                                  batches.end());
    CHECK(split2.total ==
          doctest::Approx(total_cost(first, params).total + total_cost(rest, params).total));
}

TEST_CASE("cumulative cost paths") {
    auto single = cost_path({{1, 100.0}});
    CHECK(single.periods == std::vector<long long>{1});
    CHECK(single.cumulative == std::vector<double>{100.0});

    auto path = cost_path({{1, 10.0}, {2, 0.0}, {3, 5.0}});
    CHECK(path.cumulative == std::vector<double>{10.0, 10.0, 15.0});

    auto unsorted = cost_path({{3, 5.0}, {1, 10.0}, {2, 0.0}});
    CHECK(unsorted.periods == std::vector<long long>{1, 2, 3});
    CHECK(unsorted.cumulative == std::vector<double>{10.0, 10.0, 15.0});

    for (std::size_t i = 1; i < path.cumulative.size(); ++i)
        CHECK(path.cumulative[i] >= path.cumulative[i - 1]);

    CHECK_THROWS_AS(cost_path({{1, -1.0}}), Error);
}

TEST_CASE("prediction metrics") {
    std::vector<double> a = {1.0, 2.0, 3.0};
    CHECK(mse(a, a) == 0.0);
    CHECK(mse(std::vector<double>{0.0}, std::vector<double>{2.0}) == 4.0);
    CHECK_THROWS_AS(mse(a, std::vector<double>{1.0}), Error);

    // Scale equivariance.
    std::vector<double> p = {3.0, 5.0}, o = {2.0, 7.0};
    std::vector<double> kp = {6.0, 10.0}, ko = {4.0, 14.0};
    CHECK(mse(kp, ko) == doctest::Approx(4.0 * mse(p, o)));

    CHECK(percent_error(100.0, 100.0) == 0.0);
    CHECK(percent_error(98.45, 100.0) == doctest::Approx(1.55).epsilon(1e-12));
    CHECK(percent_error(2.0 * 98.45, 2.0 * 100.0) == doctest::Approx(1.55).epsilon(1e-12));
    CHECK_THROWS_AS(percent_error(1.0, 0.0), Error);

    CHECK(zeror_predict(std::vector<double>{5.0, 5.0, 5.0}) == 5.0);
    std::vector<double> two = {0.0, 10.0};
    double zr = zeror_predict(two);
    CHECK(zr == 5.0);
    CHECK(mse(std::vector<double>{zr, zr}, two) == 25.0);
    CHECK_THROWS_AS(zeror_predict(std::vector<double>{}), Error);
}

TEST_CASE("stored predictions beat the zeror baseline on the bundled data") {
    std::vector<double> observed, predicted;
    for (const auto& b : fixture::steam_trap_batches()) {
        observed.push_back(*b.observed_cost);
        predicted.push_back(*b.predicted_cost);
    }
    double model = mse(predicted, observed);
    std::vector<double> zr(observed.size(), zeror_predict(observed));
    CHECK(model < mse(zr, observed));
}

TEST_CASE("bundled-data cost aggregates") {
    double predicted_total = 0.0, predicted_extreme = 0.0;
    std::vector<std::pair<long long, double>> observed_costs;
    for (const auto& b : fixture::steam_trap_batches()) {
        predicted_total += *b.predicted_cost;
        if (b.label == RegimeLabel::extreme) predicted_extreme += *b.predicted_cost;
        observed_costs.push_back({b.period, *b.observed_cost});
    }
    // The nine extreme batches carry about 42% of the predicted cost too.
    CHECK(100.0 * predicted_extreme / predicted_total == doctest::Approx(42.0).epsilon(0.02));

    // The observed cost path ends at the column sum.
    auto path = cost_path(observed_costs);
    CHECK(path.cumulative.back() ==
          doctest::Approx(fixture::goldens().observed_cost_total).epsilon(1e-12));
    CHECK(path.periods.front() == 1);
    CHECK(path.periods.back() == 81);
}
