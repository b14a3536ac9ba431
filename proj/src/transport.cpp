#include "projlab/transport.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "projlab/errors.hpp"
#include "projlab/grassmann.hpp"

namespace projlab {

double wasserstein2_interval(const IntervalMeasure& mu1, const IntervalMeasure& mu2) {
    const double m1 = mu1.total_mass();
    const double m2 = mu2.total_mass();
    if (std::abs(m1 - m2) > 1e-10) {
        throw ContractError("wasserstein2_interval: total masses differ");
    }
    if (m1 <= 0.0) {
        return 0.0;
    }
    const auto a1 = mu1.sorted_atoms();
    const auto a2 = mu2.sorted_atoms();
    std::size_t i = 0, j = 0;
    double r1 = a1[0].second, r2 = a2[0].second;
    double acc = 0.0;
    while (i < a1.size() && j < a2.size()) {
        const double step = std::min(r1, r2);
        const double d = a1[i].first - a2[j].first;
        acc += step * d * d;
        r1 -= step;
        r2 -= step;
        if (r1 <= 1e-15 * m1) {
            ++i;
            r1 = i < a1.size() ? a1[i].second : 0.0;
        }
        if (r2 <= 1e-15 * m1) {
            ++j;
            r2 = j < a2.size() ? a2[j].second : 0.0;
        }
    }
    return std::sqrt(std::max(0.0, acc));
}

TransportReport surrogate_tci_check(const PairState& state, int grid_size) {
    TransportReport rep;
    const PairState reference = free_pair_state(state.alpha(), state.beta(), grid_size);
    rep.lhs = wasserstein2_interval(pqp_distribution(state), pqp_distribution(reference)) /
              std::sqrt(5.0);
    const EntropyReport er = chi_proj_pair(state);
    if (!er.chi.is_finite()) {
        rep.rhs_infinite = true;
        rep.rhs = std::numeric_limits<double>::infinity();
        rep.slack = std::numeric_limits<double>::infinity();
        rep.holds = true;
        return rep;
    }
    rep.rhs = std::sqrt(std::max(0.0, -2.0 * er.chi.value()));
    rep.slack = rep.rhs - rep.lhs;
    rep.holds = rep.slack >= -1e-9;
    return rep;
}

HessianCheckReport hessian_bound_check(int n, int k, int l, const FunctionOnUnitInterval& psi,
                                       int trials, SplitMix64& rng, int threads) {
    if (!psi.d1_bound || !psi.d2_bound) {
        throw ContractError("hessian_bound_check: psi must carry d1_bound and d2_bound");
    }
    if (trials < 1) {
        throw ContractError("hessian_bound_check: trials >= 1 required");
    }
    const double c1 = 6.0, c2 = 4.5;
    const double coeff = n * (c1 * *psi.d1_bound + c2 * *psi.d2_bound);
    HessianCheckReport rep;
    rep.trials.resize(trials);

    auto run_trial = [&](int t) {
        SplitMix64 local = rng.child(static_cast<std::uint64_t>(t));
        const ProjectionMatrix p = sample_projection(n, k, local);
        const ProjectionMatrix q = sample_projection(n, l, local);
        TangentVector x1 = tangent_project(p, sample_hermitian(n, local));
        TangentVector x2 = tangent_project(q, sample_hermitian(n, local));
        const double n1 = x1.hs_norm();
        const double n2 = x2.hs_norm();
        HessianTrial& out = rep.trials[t];
        if (n1 < 1e-12 || n2 < 1e-12) {
            out = {0.0, coeff, 0.0};  // degenerate direction, excluded from the max
            return;
        }
        x1 = TangentVector(p, x1.matrix() / n1);
        x2 = TangentVector(q, x2.matrix() / n2);
        auto f = [&](double t_) {
            const ComplexMatrix c1m = grassmann_geodesic(p, x1, t_).matrix();
            const ComplexMatrix c2m = grassmann_geodesic(q, x2, t_).matrix();
            ComplexMatrix m = c1m * c2m * c1m;
            m = (m + ComplexMatrix(m.adjoint())) / 2.0;
            return n * trace_function(m, psi.f);
        };
        const double f0 = f(0.0);
        auto central = [&](double h) { return (f(h) - 2.0 * f0 + f(-h)) / (h * h); };
        const double h = 1e-3;
        const double second = (4.0 * central(h / 2.0) - central(h)) / 3.0;
        const double denom = coeff * 2.0;  // unit tangents: |X1|^2 + |X2|^2 = 2
        out.second_derivative = second;
        out.denominator = denom;
        out.ratio = denom > 0.0 ? std::abs(second) / denom : 0.0;
    };

    const int nthreads = std::max(1, std::min(threads, trials));
    if (nthreads == 1) {
        for (int t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) {
            pool.emplace_back([&] {
                for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
                    run_trial(t);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    for (const auto& t : rep.trials) {
        rep.worst_ratio = std::max(rep.worst_ratio, t.ratio);
    }
    return rep;
}

}  // namespace projlab
