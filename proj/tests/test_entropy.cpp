#include <doctest.h>

#include <cmath>

#include "projlab/entropy.hpp"
#include "projlab/errors.hpp"
#include "projlab/rng.hpp"

using namespace projlab;

namespace {
const double kLog2 = std::log(2.0);
}

TEST_CASE("log_energy: single atom by measure kind") {
    const IntervalMeasure atom = IntervalMeasure::atoms({0.5}, {0.7});
    CHECK(!log_energy(atom).is_finite());
    const IntervalMeasure sample = IntervalMeasure::samples({0.5}, {0.7});
    CHECK(log_energy(sample).value() == doctest::Approx(0.0));
    CHECK(log_energy(IntervalMeasure::zero()).value() == doctest::Approx(0.0));
}

TEST_CASE("log_energy: two symmetric atoms") {
    const IntervalMeasure m = IntervalMeasure::samples({0.25, 0.75}, {0.5, 0.5});
    CHECK(log_energy(m).value() == doctest::Approx(-kLog2 / 2).epsilon(1e-12));
}

TEST_CASE("log_energy: arcsine energy is -2 log 2") {
    const PairState free = free_pair_state(0.5, 0.5, 4000);
    const ExtReal e = log_energy(free.nu());
    REQUIRE(e.is_finite());
    CHECK(std::abs(e.value() + 2.0 * kLog2) < 1e-4);
}

TEST_CASE("b_function values") {
    CHECK(b_function(0.0, 0.0) == doctest::Approx(-2.0 * kLog2).epsilon(1e-12));
    // high-precision reference: 4 log 2 - (9/2) log 3
    CHECK(b_function(1.0, 0.0) == doctest::Approx(-2.1711665767667124).epsilon(1e-12));
    SplitMix64 rng(51);
    for (int i = 0; i < 20; ++i) {
        const double s = 3.0 * rng.next_double();
        const double t = 3.0 * rng.next_double();
        CHECK(b_function(s, t) == doctest::Approx(b_function(t, s)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(b_function(-0.1, 0.0), std::domain_error);
}

TEST_CASE("c_constant: closed-form cases and stability") {
    CHECK(c_constant(0.0, 0.7) == doctest::Approx(0.0));
    CHECK(c_constant(0.5, 0.5) == doctest::Approx(-kLog2 / 2).epsilon(1e-12));
    // matches rho^2 B(u/rho, v/rho) where that form is stable
    SplitMix64 rng(52);
    for (int i = 0; i < 30; ++i) {
        const double a = 0.05 + 0.9 * rng.next_double();
        const double b = 0.05 + 0.9 * rng.next_double();
        const double rho = std::min({a, b, 1 - a, 1 - b});
        const double via_b =
            rho * rho * b_function(std::abs(a - b) / rho, std::abs(a + b - 1) / rho);
        CHECK(c_constant(a, b) == doctest::Approx(via_b).epsilon(1e-10));
        // complement invariance
        CHECK(c_constant(a, b) == doctest::Approx(c_constant(1 - a, b)).epsilon(1e-12));
    }
    // tiny rho must not overflow
    CHECK(std::isfinite(c_constant(1e-13, 0.5)));
    CHECK(std::abs(c_constant(1e-13, 0.5)) < 1e-10);
}

TEST_CASE("chi: free pair has zero entropy") {
    const EntropyReport r = chi_proj_pair(free_pair_state(0.5, 0.5, 4000));
    REQUIRE(r.compatible);
    REQUIRE(r.chi.is_finite());
    CHECK(std::abs(r.chi.value()) < 1e-3);
    CHECK(r.rho == doctest::Approx(0.5));
    // report parts reassemble to chi
    CHECK(r.chi.value() ==
          doctest::Approx(r.sigma_term + r.logx_term + r.log1mx_term - r.c_term));
}

TEST_CASE("chi: free pair at asymmetric traces is also zero") {
    const EntropyReport r = chi_proj_pair(free_pair_state(0.3, 0.6, 4000));
    REQUIRE(r.chi.is_finite());
    CHECK(std::abs(r.chi.value()) < 1e-3);
}

TEST_CASE("chi: incompatible corners give minus infinity") {
    // a11 and a00 both positive
    const PairState s =
        PairState::create(0.2, 0.3, 0.3, 0.2, IntervalMeasure::zero(MeasureKind::DensityGrid));
    const EntropyReport r = chi_proj_pair(s);
    CHECK(!r.compatible);
    CHECK(!r.chi.is_finite());
}

TEST_CASE("chi: an honest interior atom forces minus infinity through the energy") {
    const PairState s =
        PairState::create(0.0, 0.0, 0.0, 0.0, IntervalMeasure::atoms({0.5}, {1.0}));
    const EntropyReport r = chi_proj_pair(s);
    CHECK(r.compatible);
    CHECK(!r.chi.is_finite());
}

TEST_CASE("chi: negativity on random compatible states") {
    SplitMix64 rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        // random increasing field keeps compatibility (corners stay extremal);
        // exponents bounded away from 1 keep the true entropy below the
        // quadrature noise floor
        const double u = rng.next_double();
        const double p = u < 0.5 ? 0.4 + u : 1.1 + 1.4 * (u - 0.5);
        const PairState s =
            pushforward_state(free_pair_state(0.5, 0.5, 1000),
                              FunctionOnUnitInterval::power(p));
        const EntropyReport r = chi_proj_pair(s);
        REQUIRE(r.chi.is_finite());
        CHECK(r.chi.value() <= 1e-9);
    }
}

TEST_CASE("chi: complement symmetry") {
    const PairState s = pushforward_state(free_pair_state(0.3, 0.6, 1500),
                                          FunctionOnUnitInterval::power(1.3));
    const EntropyReport a = chi_proj_pair(s);
    const EntropyReport b = chi_proj_pair(complement_first(s));
    REQUIRE(a.chi.is_finite());
    REQUIRE(b.chi.is_finite());
    CHECK(a.chi.value() == doctest::Approx(b.chi.value()).epsilon(1e-6));
}

TEST_CASE("chi: only the free measure comes close to zero") {
    // perturb the arcsine weights on its own grid; any state at total
    // variation >= 0.1 from the maximizer must sit clearly below zero
    const PairState free = free_pair_state(0.5, 0.5, 1500);
    SplitMix64 rng(54);
    for (int trial = 0; trial < 50; ++trial) {
        const double freq = 1.0 + 3.0 * rng.next_double();
        const double phase = 6.28 * rng.next_double();
        std::vector<double> xs(free.nu().support());
        std::vector<double> ws(free.nu().weights());
        double mass = 0.0;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            ws[i] *= 1.0 + 0.9 * std::cos(freq * 3.14159 * xs[i] + phase);
            mass += ws[i];
        }
        double tv = 0.0;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            ws[i] /= mass;
            tv += std::abs(ws[i] - free.nu().weights()[i]);
        }
        tv /= 2.0;
        if (tv < 0.1) continue;  // only states far from the maximizer count
        const PairState s = PairState::create(
            0.0, 0.0, 0.0, 0.0, IntervalMeasure::density_grid(std::move(xs), std::move(ws)));
        const EntropyReport r = chi_proj_pair(s);
        REQUIRE(r.chi.is_finite());
        CHECK(r.chi.value() < -1e-3);
    }
}

TEST_CASE("chi: grid refinement is stable") {
    const EntropyReport coarse = chi_proj_pair(free_pair_state(0.4, 0.55, 2000));
    const EntropyReport fine = chi_proj_pair(free_pair_state(0.4, 0.55, 4000));
    CHECK(std::abs(coarse.chi.value() - fine.chi.value()) <= 1e-4);
}

TEST_CASE("change of variable: identity map changes nothing") {
    const PairState s = free_pair_state(0.5, 0.5, 1000);
    CHECK(change_of_variable_delta(s, FunctionOnUnitInterval::identity()) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("change of variable: matches the pushforward entropy difference") {
    const PairState s = free_pair_state(0.5, 0.5, 4000);
    const FunctionOnUnitInterval sq = FunctionOnUnitInterval::power(2.0);
    const double delta = change_of_variable_delta(s, sq);
    const double chi0 = chi_proj_pair(s).chi.value();
    const double chi1 = chi_proj_pair(pushforward_state(s, sq)).chi.value();
    CHECK(std::abs(chi1 - (chi0 + delta)) <= 1e-4);
}

TEST_CASE("change of variable: affine maps contribute the log-slope energy") {
    const PairState s = free_pair_state(0.5, 0.5, 2000);
    const double delta = change_of_variable_delta(s, FunctionOnUnitInterval::affine(0.2, 0.5));
    const double mass = s.nu().interior_mass();
    // field weights vanish at alpha = beta = 1/2; only the quadratic term is left
    CHECK(delta == doctest::Approx(0.25 * std::log(0.5) * mass * mass).epsilon(1e-10));
}

TEST_CASE("change of variable: non-monotone field is rejected") {
    FunctionOnUnitInterval dec;
    dec.f = [](double x) { return 0.9 - 0.8 * x; };
    const PairState s = free_pair_state(0.5, 0.5, 200);
    CHECK_THROWS_AS(change_of_variable_delta(s, dec), InvalidField);
}
