#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "projlab/errors.hpp"
#include "projlab/grassmann.hpp"
#include "projlab/pair_state.hpp"

using namespace projlab;

namespace {

// every word over {e,f} of length <= max_len
std::vector<std::string> all_pair_words(int max_len) {
    std::vector<std::string> out, frontier{""};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::string> next;
        for (const auto& w : frontier) {
            for (char c : {'e', 'f'}) {
                next.push_back(w + c);
                out.push_back(w + c);
            }
        }
        frontier = std::move(next);
    }
    return out;
}

double matrix_word_moment(const ProjectionMatrix& p, const ProjectionMatrix& q,
                          const std::string& word) {
    ComplexMatrix prod = ComplexMatrix::Identity(p.dim(), p.dim());
    for (char c : word) {
        prod = prod * (c == 'e' ? p.matrix() : q.matrix());
    }
    return prod.trace().real() / p.dim();
}

}  // namespace

TEST_CASE("canonical_form: commuting cases") {
    SplitMix64 rng(41);
    const int n = 16, k = 5;
    const ProjectionMatrix p = sample_projection(n, k, rng);

    const PairState same = canonical_form(p, p);
    CHECK(same.a11() == doctest::Approx(static_cast<double>(k) / n));
    CHECK(same.a00() == doctest::Approx(1.0 - static_cast<double>(k) / n));
    CHECK(same.nu().size() == 0);

    ComplexMatrix comp = ComplexMatrix::Identity(n, n) - p.matrix();
    const PairState opp = canonical_form(p, ProjectionMatrix::from_matrix(comp));
    CHECK(opp.a10() == doctest::Approx(static_cast<double>(k) / n));
    CHECK(opp.a01() == doctest::Approx(1.0 - static_cast<double>(k) / n));
    CHECK(opp.nu().size() == 0);
}

TEST_CASE("canonical_form: word moments reproduce matrix traces") {
    SplitMix64 rng(42);
    const int n = 32;
    const ProjectionMatrix p = sample_projection(n, 16, rng);
    const ProjectionMatrix q = sample_projection(n, 16, rng);
    const PairState state = canonical_form(p, q);
    CHECK(state.alpha() == doctest::Approx(0.5));
    CHECK(state.beta() == doctest::Approx(0.5));
    for (const std::string& w : all_pair_words(6)) {
        CHECK(pair_moment(state, w) ==
              doctest::Approx(matrix_word_moment(p, q, w)).epsilon(1e-8));
    }
}

TEST_CASE("canonical_form: unbalanced ranks keep the bookkeeping straight") {
    SplitMix64 rng(43);
    const int n = 24;
    const ProjectionMatrix p = sample_projection(n, 5, rng);
    const ProjectionMatrix q = sample_projection(n, 9, rng);
    const PairState state = canonical_form(p, q);
    CHECK(state.alpha() == doctest::Approx(5.0 / 24));
    CHECK(state.beta() == doctest::Approx(9.0 / 24));
    for (const std::string& w : all_pair_words(4)) {
        CHECK(pair_moment(state, w) ==
              doctest::Approx(matrix_word_moment(p, q, w)).epsilon(1e-8));
    }
}

TEST_CASE("canonical_form: dimension mismatch rejected") {
    SplitMix64 rng(44);
    const ProjectionMatrix p = sample_projection(8, 3, rng);
    const ProjectionMatrix q = sample_projection(12, 4, rng);
    CHECK_THROWS_AS(canonical_form(p, q), InvalidDimension);
}

TEST_CASE("pair_moment: defining traces and free values") {
    const PairState free = free_pair_state(0.5, 0.5);
    CHECK(pair_moment(free, "e") == doctest::Approx(0.5));
    CHECK(pair_moment(free, "f") == doctest::Approx(0.5));
    CHECK(pair_moment(free, "ef") == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(pair_moment(free, "efef") == doctest::Approx(3.0 / 16).epsilon(1e-6));
    CHECK(pair_moment(free, "efe") == doctest::Approx(0.25).epsilon(1e-6));
    CHECK_THROWS_AS(pair_moment(free, "xz"), ContractError);
}

TEST_CASE("free_pair_state: degenerate traces have no interior part") {
    const PairState s = free_pair_state(0.0, 0.3);
    CHECK(s.a01() == doctest::Approx(0.3));
    CHECK(s.a00() == doctest::Approx(0.7));
    CHECK(s.nu().size() == 0);
}

TEST_CASE("free_pair_state: balanced case is the unit-mass arcsine") {
    const PairState s = free_pair_state(0.5, 0.5, 4000);
    CHECK(s.a11() == doctest::Approx(0.0));
    CHECK(s.nu().interior_mass() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(s.nu().moment(1) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(s.nu().moment(2) == doctest::Approx(0.375).epsilon(1e-8));
}

TEST_CASE("free_pair_state: general traces keep mass 2 rho and corner rules") {
    const PairState s = free_pair_state(0.3, 0.6, 2000);
    CHECK(s.a11() == doctest::Approx(0.0));
    CHECK(s.a00() == doctest::Approx(0.1));
    CHECK(s.a01() == doctest::Approx(0.3));
    CHECK(s.a10() == doctest::Approx(0.0));
    CHECK(s.nu().interior_mass() == doctest::Approx(0.6).epsilon(1e-10));
    // freeness factorization of the mixed moment
    CHECK(pair_moment(s, "ef") == doctest::Approx(0.18).epsilon(1e-6));
}

TEST_CASE("pushforward: identity leaves the state alone") {
    const PairState s = free_pair_state(0.5, 0.5, 500);
    const PairState t = pushforward_state(s, FunctionOnUnitInterval::identity());
    for (const std::string& w : all_pair_words(4)) {
        CHECK(pair_moment(t, w) == doctest::Approx(pair_moment(s, w)).epsilon(1e-12));
    }
}

TEST_CASE("pushforward: constants collapse nu but preserve traces") {
    const PairState s = free_pair_state(0.5, 0.5, 500);
    const PairState t = pushforward_state(s, FunctionOnUnitInterval::constant(0.42));
    CHECK(t.nu().size() == 1);
    CHECK(t.nu().support()[0] == doctest::Approx(0.42));
    CHECK(t.beta() == doctest::Approx(s.beta()));
    CHECK(t.alpha() == doctest::Approx(s.alpha()));
}

TEST_CASE("pushforward: second moment through psi(x)=x^2") {
    const PairState s = free_pair_state(0.5, 0.5, 4000);
    const PairState t = pushforward_state(s, FunctionOnUnitInterval::power(2.0));
    CHECK(pair_moment(t, "efe") == doctest::Approx(3.0 / 16).epsilon(1e-6));
}

TEST_CASE("pushforward: boundary mass migrates into the right corners") {
    // psi sends everything below 0.5 to 0 and above to 1
    FunctionOnUnitInterval step;
    step.f = [](double x) { return x < 0.5 ? 0.0 : 1.0; };
    const PairState s = free_pair_state(0.5, 0.5, 1000);
    const PairState t = pushforward_state(s, step);
    CHECK(t.nu().size() == 0);
    // arcsine is symmetric: half the unit mass goes each way, split in two
    CHECK(t.a10() == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(t.a01() == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(t.a11() == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(t.a00() == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(t.alpha() == doctest::Approx(0.5));
    CHECK(t.beta() == doctest::Approx(0.5));
}

TEST_CASE("pushforward: composition equals the composed map") {
    const PairState s = free_pair_state(0.5, 0.5, 800);
    const PairState two_step = pushforward_state(
        pushforward_state(s, FunctionOnUnitInterval::power(2.0)),
        FunctionOnUnitInterval::power(1.5));
    const PairState one_step = pushforward_state(s, FunctionOnUnitInterval::power(3.0));
    for (const std::string& w : all_pair_words(4)) {
        CHECK(pair_moment(two_step, w) ==
              doctest::Approx(pair_moment(one_step, w)).epsilon(1e-10));
    }
}

TEST_CASE("pushforward: non-monotone field is rejected") {
    FunctionOnUnitInterval hump;
    hump.f = [](double x) { return x * (1.0 - x) * 4.0 * 0.9 + 0.05; };
    const PairState s = free_pair_state(0.5, 0.5, 200);
    CHECK_THROWS_AS(pushforward_state(s, hump), InvalidField);
}

TEST_CASE("complement of the first projection permutes corners and reflects nu") {
    const PairState s = free_pair_state(0.3, 0.6, 1000);
    const PairState c = complement_first(s);
    CHECK(c.alpha() == doctest::Approx(0.7));
    CHECK(c.beta() == doctest::Approx(0.6));
    // moments: tau((1-p)q) = beta - tau(pq)
    CHECK(pair_moment(c, "ef") ==
          doctest::Approx(s.beta() - pair_moment(s, "ef")).epsilon(1e-10));
    CHECK(pair_moment(c, "efef") ==
          doctest::Approx(pair_moment(s, "f") - 2 * pair_moment(s, "eff") +
                          pair_moment(s, "fefe"))
              .epsilon(1e-9));
}

TEST_CASE("tau_psi_efe matches the moment route for polynomials") {
    const PairState s = free_pair_state(0.5, 0.5, 3000);
    // psi(x) = x^2: tau(psi(efe)) = tau(efef...) with the corner convention
    const double via_field = tau_psi_efe(s, FunctionOnUnitInterval::power(2.0));
    const double via_word = pair_moment(s, "efefe");  // tau((efe)^2) = tau(efefe)
    CHECK(via_field == doctest::Approx(via_word).epsilon(1e-9));
}

TEST_CASE("pqp_distribution is a unit-mass spectral measure") {
    const PairState s = free_pair_state(0.3, 0.6, 500);
    const IntervalMeasure d = pqp_distribution(s);
    CHECK(d.total_mass() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(d.atom1() == doctest::Approx(s.a11()));
    // tau(efe) computed against the spectral measure
    CHECK(d.integrate_full([](double x) { return x; }) ==
          doctest::Approx(pair_moment(s, "efe")).epsilon(1e-10));
}

TEST_CASE("PairState validation rejects inconsistent bookkeeping") {
    CHECK_THROWS_AS(PairState::create(0.5, 0.5, 0.5, 0.5, IntervalMeasure::zero()),
                    ContractError);
    CHECK_THROWS_AS(
        PairState::validated(0.2, 0.2, 0.25, 0.25, 0.25, 0.25, IntervalMeasure::zero()),
        ContractError);
}
