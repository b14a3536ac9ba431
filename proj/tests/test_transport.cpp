#include <doctest.h>

#include <cmath>
#include <vector>

#include "projlab/errors.hpp"
#include "projlab/transport.hpp"

using namespace projlab;

namespace {

IntervalMeasure random_measure(SplitMix64& rng, int atoms, double mass) {
    std::vector<double> x, w;
    double total = 0.0;
    for (int i = 0; i < atoms; ++i) {
        x.push_back(0.02 + 0.96 * rng.next_double());
        w.push_back(0.05 + rng.next_double());
        total += w.back();
    }
    for (double& wi : w) wi *= mass / total;
    return IntervalMeasure::samples(std::move(x), std::move(w));
}

}  // namespace

TEST_CASE("w2: identical measures have zero distance") {
    SplitMix64 rng(71);
    const IntervalMeasure m = random_measure(rng, 10, 1.0);
    CHECK(wasserstein2_interval(m, m) == doctest::Approx(0.0));
}

TEST_CASE("w2: two unit atoms") {
    const IntervalMeasure a = IntervalMeasure::atoms({0.2}, {1.0});
    const IntervalMeasure b = IntervalMeasure::atoms({0.9}, {1.0});
    CHECK(wasserstein2_interval(a, b) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("w2: uniform against its barycenter") {
    const int n = 2000;
    std::vector<double> x(n), w(n, 1.0 / n);
    for (int i = 0; i < n; ++i) x[i] = (i + 0.5) / n;
    const IntervalMeasure uniform = IntervalMeasure::density_grid(std::move(x), std::move(w));
    const IntervalMeasure spike = IntervalMeasure::atoms({0.5}, {1.0});
    CHECK(wasserstein2_interval(uniform, spike) ==
          doctest::Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-4));
}

TEST_CASE("w2: mass mismatch is a contract error") {
    const IntervalMeasure a = IntervalMeasure::atoms({0.5}, {1.0});
    const IntervalMeasure b = IntervalMeasure::atoms({0.5}, {0.5});
    CHECK_THROWS_AS(wasserstein2_interval(a, b), ContractError);
}

TEST_CASE("w2: metric axioms on random triples") {
    SplitMix64 rng(72);
    for (int trial = 0; trial < 100; ++trial) {
        const IntervalMeasure a = random_measure(rng, 6, 1.0);
        const IntervalMeasure b = random_measure(rng, 9, 1.0);
        const IntervalMeasure c = random_measure(rng, 4, 1.0);
        const double ab = wasserstein2_interval(a, b);
        const double ba = wasserstein2_interval(b, a);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
        CHECK(ab <= wasserstein2_interval(a, c) + wasserstein2_interval(c, b) + 1e-10);
    }
}

TEST_CASE("w2: translations shift the distance exactly") {
    SplitMix64 rng(73);
    const IntervalMeasure a = random_measure(rng, 8, 1.0);
    const double shift = 0.01;
    std::vector<double> xs;
    for (double x : a.support()) xs.push_back(x + shift);
    const IntervalMeasure b = IntervalMeasure::samples(std::move(xs), a.weights());
    CHECK(wasserstein2_interval(a, b) == doctest::Approx(shift).epsilon(1e-12));
    // affine contraction scales W2 by the slope
    std::vector<double> ys;
    for (double x : a.support()) ys.push_back(0.5 * x + 0.2);
    std::vector<double> zs;
    for (double x : b.support()) zs.push_back(0.5 * x + 0.2);
    const IntervalMeasure am = IntervalMeasure::samples(std::move(ys), a.weights());
    const IntervalMeasure bm = IntervalMeasure::samples(std::move(zs), a.weights());
    CHECK(wasserstein2_interval(am, bm) == doctest::Approx(0.5 * shift).epsilon(1e-12));
}

TEST_CASE("tci surrogate: the free state sits at the origin") {
    const TransportReport r = surrogate_tci_check(free_pair_state(0.5, 0.5, 2000), 2000);
    CHECK(r.lhs == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(r.rhs <= 0.1);
    CHECK(r.holds);
}

TEST_CASE("tci surrogate: infinite right side holds trivially") {
    const PairState atomic =
        PairState::create(0.0, 0.0, 0.0, 0.0, IntervalMeasure::atoms({0.5}, {1.0}));
    const TransportReport r = surrogate_tci_check(atomic, 500);
    CHECK(r.rhs_infinite);
    CHECK(r.holds);
}

TEST_CASE("tci surrogate: squeezed arcsine keeps positive slack") {
    // renormalized arcsine restricted to (0.1, 0.9)
    const PairState free = free_pair_state(0.5, 0.5, 2000);
    std::vector<double> xs, ws;
    double mass = 0.0;
    for (std::size_t i = 0; i < free.nu().size(); ++i) {
        const double x = free.nu().support()[i];
        if (x > 0.1 && x < 0.9) {
            xs.push_back(x);
            ws.push_back(free.nu().weights()[i]);
            mass += ws.back();
        }
    }
    for (double& w : ws) w /= mass;
    const PairState squeezed = PairState::create(
        0.0, 0.0, 0.0, 0.0, IntervalMeasure::density_grid(std::move(xs), std::move(ws)));
    const TransportReport r = surrogate_tci_check(squeezed, 2000);
    CHECK(r.holds);
    CHECK(r.slack > 0.0);
}

TEST_CASE("hessian check: constant fields have zero ratio") {
    SplitMix64 rng(74);
    const auto rep =
        hessian_bound_check(8, 4, 4, FunctionOnUnitInterval::constant(0.3), 5, rng, 1);
    CHECK(rep.worst_ratio == doctest::Approx(0.0));
}

TEST_CASE("hessian check: identity field stays within the constant bound") {
    SplitMix64 rng(75);
    const auto rep =
        hessian_bound_check(8, 4, 4, FunctionOnUnitInterval::identity(), 20, rng, 2);
    CHECK(rep.worst_ratio <= 1.0 + 1e-3);
    CHECK(rep.trials.size() == 20);
}

TEST_CASE("hessian check: missing derivative bounds are contract errors") {
    SplitMix64 rng(76);
    FunctionOnUnitInterval bare;
    bare.f = [](double x) { return x; };
    CHECK_THROWS_AS(hessian_bound_check(8, 4, 4, bare, 3, rng, 1), ContractError);
}
