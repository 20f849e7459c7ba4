#include "packlab/exponent.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace packlab;

namespace {

CountCurve power_law(double c, double delta, double lo, double hi) {
    CountCurve curve;
    for (double T : default_grid(lo, hi)) curve.points.push_back({T, static_cast<std::uint64_t>(std::llround(c * std::pow(T, delta)))});
    return curve;
}

}  // namespace

TEST_CASE("grid layout") {
    std::vector<double> g = default_grid(1, 16);
    REQUIRE(g.size() == 17);
    CHECK(g[4] == doctest::Approx(2));
    CHECK(g.back() == 16);
    CHECK_THROWS_AS(default_grid(0, 1), ConfigError);
}

TEST_CASE("counting function") {
    CountCurve c = counting_function({2, 3, 3, 5, Rational(11, 2)}, {1, 3, 5, 6});
    REQUIRE(c.points.size() == 4);
    CHECK(c.points[0].N == 0);
    CHECK(c.points[1].N == 3);
    CHECK(c.points[2].N == 4);
    CHECK(c.points[3].N == 5);
    CHECK_THROWS_AS(counting_function({0, 1}, {1, 2}), ConfigError);
    CHECK_THROWS_AS(counting_function({1}, {2, 1}), ConfigError);
}

TEST_CASE("a clean power law gives its slope back") {
    CountCurve c = power_law(1000, 1.5, 10, 1e6);
    ExponentEstimate e = fit_exponent(c);
    CHECK(e.delta_hat == doctest::Approx(1.5).epsilon(1e-4));
    CHECK(e.constant() == doctest::Approx(1000).epsilon(1e-3));
    CHECK(e.r_squared > 0.9999);
    CHECK(e.T_hi == doctest::Approx(1e6));
    CHECK(e.T_lo == doctest::Approx(1e4).epsilon(0.2));
}

TEST_CASE("fit refusals") {
    CountCurve few;
    few.points = {{10, 5}, {20, 9}, {40, 17}};
    CHECK_THROWS_AS(fit_exponent(few), PreconditionError);
    CountCurve t = power_law(10, 1, 1, 1e4);
    t.truncated = true;
    CHECK_THROWS_AS(fit_exponent(t), TruncationError);
    t.reliable_up_to = 1e4;
    CHECK_NOTHROW(fit_exponent(t));
    t.reliable_up_to = 1e3;
    CHECK_THROWS_AS(fit_exponent(t), TruncationError);
}

TEST_CASE("power sums bracket the exponent") {
    // curvatures 1..n: sum of k^{-s} diverges for s <= 1
    std::vector<Rational> k;
    for (long i = 1; i <= 100000; ++i) k.emplace_back(i);
    PowerSum above = power_sum(k, 1.5);
    PowerSum below = power_sum(k, 0.5);
    CHECK(above.trend == TailTrend::shrinking);
    CHECK(below.trend == TailTrend::growing);
    REQUIRE(below.balance_exponent);
    CHECK(*below.balance_exponent == doctest::Approx(1).epsilon(0.05));
}

TEST_CASE("curve CSV round trip") {
    CountCurve c = power_law(3, 1.3, 1, 1000);
    c.truncated = true;
    c.reliable_up_to = 500;
    c.ambient_dimension = 2;
    c.source["packing"] = "apollonian2";
    std::stringstream s;
    write_curve_csv(s, c);
    CountCurve r = read_curve_csv(s);
    REQUIRE(r.points.size() == c.points.size());
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        CHECK(r.points[i].T == c.points[i].T);
        CHECK(r.points[i].N == c.points[i].N);
    }
    CHECK(r.truncated);
    CHECK(*r.reliable_up_to == 500);
    CHECK(*r.ambient_dimension == 2);
    CHECK(r.source.at("packing") == "apollonian2");
    std::stringstream bad("T,N\n1,2\nx,3\n");
    CHECK_THROWS_AS(read_curve_csv(bad), ConfigError);
}
