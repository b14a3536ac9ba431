#include <doctest.h>

#include <cmath>

#include "projlab/errors.hpp"
#include "projlab/measure.hpp"

using namespace projlab;

TEST_CASE("interval measure: construction, sorting, merging") {
    IntervalMeasure m = IntervalMeasure::samples({0.7, 0.2, 0.7}, {1.0, 2.0, 3.0});
    CHECK(m.size() == 2);
    CHECK(m.support()[0] == doctest::Approx(0.2));
    CHECK(m.weights()[1] == doctest::Approx(4.0));  // coincident atoms merged
    CHECK(m.total_mass() == doctest::Approx(6.0));
}

TEST_CASE("interval measure: rejects bad atoms") {
    CHECK_THROWS_AS(IntervalMeasure::samples({0.0}, {1.0}), ContractError);
    CHECK_THROWS_AS(IntervalMeasure::samples({1.0}, {1.0}), ContractError);
    CHECK_THROWS_AS(IntervalMeasure::samples({0.5}, {-1.0}), ContractError);
    CHECK_THROWS_AS(IntervalMeasure::samples({0.5}, {1.0, 2.0}), ContractError);
}

TEST_CASE("interval measure: moments and reflection") {
    IntervalMeasure m = IntervalMeasure::samples({0.25, 0.75}, {0.5, 0.5});
    CHECK(m.moment(1) == doctest::Approx(0.5));
    CHECK(m.moment(2) == doctest::Approx(0.3125));
    const IntervalMeasure r = m.reflected();
    CHECK(r.support()[0] == doctest::Approx(0.25));
    CHECK(r.moment(1) == doctest::Approx(0.5));

    IntervalMeasure asym = IntervalMeasure::samples({0.1}, {1.0}, 0.3, 0.2);
    const IntervalMeasure ra = asym.reflected();
    CHECK(ra.atom0() == doctest::Approx(0.2));
    CHECK(ra.atom1() == doctest::Approx(0.3));
    CHECK(ra.support()[0] == doctest::Approx(0.9));
}

TEST_CASE("interval measure: full integrals include endpoint atoms") {
    IntervalMeasure m = IntervalMeasure::samples({0.5}, {1.0}, 0.25, 0.25);
    CHECK(m.integrate_full([](double x) { return x; }) == doctest::Approx(0.75));
    CHECK(m.total_mass() == doctest::Approx(1.5));
}

TEST_CASE("fields: named constructors and derivative metadata") {
    const auto id = FunctionOnUnitInterval::identity();
    CHECK(id(0.3) == doctest::Approx(0.3));
    CHECK(*id.d1_bound == doctest::Approx(1.0));
    const auto sq = FunctionOnUnitInterval::power(2.0);
    CHECK(sq(0.5) == doctest::Approx(0.25));
    CHECK(*sq.d2_bound == doctest::Approx(2.0));
    const auto aff = FunctionOnUnitInterval::affine(0.2, 0.5);
    CHECK(aff(0.6) == doctest::Approx(0.5));
}

TEST_CASE("divided quotient: smooth across the diagonal") {
    const auto sq = FunctionOnUnitInterval::power(2.0);
    // off-diagonal: (x^2 - y^2)/(x - y) = x + y
    CHECK(divided_quotient(sq, 0.4, 0.1) == doctest::Approx(0.5));
    // near-diagonal: derivative 2x
    CHECK(divided_quotient(sq, 0.30000001, 0.3) == doctest::Approx(0.6).epsilon(1e-6));
    // analytic derivative is used when present
    CHECK(divided_quotient(sq, 0.3, 0.3) == doctest::Approx(0.6));
}

TEST_CASE("monotonicity check flags decreasing fields") {
    FunctionOnUnitInterval dec;
    dec.f = [](double x) { return 1.0 - x; };
    CHECK_THROWS_AS(check_increasing_on(dec, {0.2, 0.8}), InvalidField);
    const auto inc = FunctionOnUnitInterval::power(1.5);
    CHECK_NOTHROW(check_increasing_on(inc, {0.2, 0.8}));
}

TEST_CASE("interpolant field clamps outside its nodes") {
    const auto f = FunctionOnUnitInterval::interpolant({0.2, 0.8}, {1.0, 2.0});
    CHECK(f(0.0) == doctest::Approx(1.0));
    CHECK(f(0.5) == doctest::Approx(1.5));
    CHECK(f(1.0) == doctest::Approx(2.0));
}
