#include "projlab/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "projlab/errors.hpp"
#include "projlab/grassmann.hpp"

namespace projlab {

double pressure_single(double alpha, double h1, double h2) {
    if (alpha < 0.0 || alpha > 1.0) {
        throw ContractError("pressure_single: alpha must lie in [0,1]");
    }
    return -alpha * h1 - (1.0 - alpha) * h2;
}

namespace {

// Edge-adapted grid over the whole interval: x = sin^2(theta/2) at theta
// midpoints, shared with the density discretization of the pair model.
std::vector<double> theta_grid(int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) {
        const double th = std::numbers::pi * (i + 0.5) / n;
        x[i] = std::sin(th / 2.0) * std::sin(th / 2.0);
    }
    return x;
}

std::vector<double> grid_cells(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> d(n);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (x[i + 1] - x[i - 1]) / 2.0;
    d[0] = x[1] - x[0];
    d[n - 1] = x[n - 1] - x[n - 2];
    return d;
}

struct Kkt {
    double residual;
    double lambda;
};

// Flatness of the effective potential phi on the support, excess above it
// off the support.
Kkt kkt_of(const std::vector<double>& w, const std::vector<double>& phi, double mass) {
    double wsum = 0.0, wphi = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] > 1e-12 * mass) {
            wsum += w[i];
            wphi += w[i] * phi[i];
        }
    }
    const double lambda = wphi / wsum;
    double res = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] > 1e-12 * mass) {
            res = std::max(res, std::abs(phi[i] - lambda));
        } else {
            res = std::max(res, phi[i] - lambda);
        }
    }
    return {res, lambda};
}

double full_trace_exponent(int n, int k, int l, const PressureHamiltonian& h,
                           const RealVector& angles) {
    // Tr_N h(P,Q) = A k + B l + (N-k) psi(0) + sum_i psi(x_i)
    double tr = h.a * k + h.b * l + (n - k) * h.psi(0.0);
    for (int i = 0; i < angles.size(); ++i) {
        tr += h.psi(angles(i));
    }
    return -static_cast<double>(n) * tr;
}

McPressureResult direct_pressure(int n, int k, int l, const PressureHamiltonian& h, int samples,
                                 SplitMix64& rng) {
    std::vector<double> logw(samples);
    for (int s = 0; s < samples; ++s) {
        const RealVector angles = sample_pair_eigenvalues(n, k, l, rng);
        logw[s] = full_trace_exponent(n, k, l, h, angles);
    }
    const double n2 = static_cast<double>(n) * n;
    const double mx = *std::max_element(logw.begin(), logw.end());
    auto log_mean = [&](int skip) {
        double acc = 0.0;
        for (int s = 0; s < samples; ++s) {
            if (s == skip) continue;
            acc += std::exp(logw[s] - mx);
        }
        const int count = skip < 0 ? samples : samples - 1;
        return (mx + std::log(acc / count)) / n2;
    };
    McPressureResult res;
    res.estimate = log_mean(-1);
    res.method_used = PressureMethod::Direct;
    if (samples > 1) {
        // jackknife over the log-mean
        double jsum = 0.0, jsq = 0.0;
        for (int s = 0; s < samples; ++s) {
            const double v = log_mean(s);
            jsum += v;
            jsq += v * v;
        }
        const double jbar = jsum / samples;
        res.std_error =
            std::sqrt(std::max(0.0, (samples - 1.0) / samples * (jsq - samples * jbar * jbar)));
    }
    return res;
}

// 8-point Gauss-Legendre on [0,1]
constexpr int kGlPoints = 8;
constexpr double kGlNode[kGlPoints] = {
    0.019855071751231884, 0.101666761293186630, 0.237233795041835507, 0.408282678752175097,
    0.591717321247824903, 0.762766204958164493, 0.898333238706813370, 0.980144928248768116};
constexpr double kGlWeight[kGlPoints] = {
    0.050614268145188129, 0.111190517226687235, 0.156853322938943644, 0.181341891689180991,
    0.181341891689180991, 0.156853322938943644, 0.111190517226687235, 0.050614268145188129};

McPressureResult tilted_chain_pressure(int n, int k, int l, const PressureHamiltonian& h,
                                       int samples, SplitMix64& rng) {
    // d/ds (1/N^2) log Z(s) = -(1/N) E_s[sum_i psi(x_i)], integrated over
    // s in [0,1]; each expectation comes from one tilted chain.
    const int count = std::max(32, samples / kGlPoints);
    double integral = 0.0, var = 0.0;
    for (int q = 0; q < kGlPoints; ++q) {
        const double s = kGlNode[q];
        FunctionOnUnitInterval tilted;
        const auto base = h.psi;
        tilted.f = [s, base](double x) { return s * base(x); };
        GibbsPairSpec spec{n, k, l, tilted};
        SplitMix64 chain_rng = rng.child(static_cast<std::uint64_t>(q) + 101);
        const auto draws = gibbs_chain(spec, chain_rng, 600, 3, count);
        // batch means for an autocorrelation-aware standard error
        const int nbatch = 8;
        const int per = count / nbatch;
        std::vector<double> batch(nbatch, 0.0);
        double mean = 0.0;
        for (int c = 0; c < count; ++c) {
            double e = 0.0;
            for (int i = 0; i < draws[c].size(); ++i) {
                e += h.psi(draws[c](i));
            }
            mean += e;
            if (c / per < nbatch) batch[c / per] += e / per;
        }
        mean /= count;
        double bvar = 0.0;
        for (double b : batch) bvar += (b - mean) * (b - mean);
        bvar /= (nbatch - 1.0) * nbatch;
        integral += kGlWeight[q] * mean;
        var += kGlWeight[q] * kGlWeight[q] * bvar;
    }
    McPressureResult res;
    const double deterministic = -(h.a * k + h.b * l + (n - k) * h.psi(0.0)) / n;
    res.estimate = deterministic - integral / n;
    res.std_error = std::sqrt(var) / n;
    res.method_used = PressureMethod::TiltedChain;
    return res;
}

}  // namespace

EquilibriumSolution equilibrium_pressure(double alpha, double beta, const PressureHamiltonian& h,
                                         int grid_size, int max_iterations, double kkt_tol) {
    if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0) {
        throw ContractError("equilibrium_pressure: traces must lie in [0,1]");
    }
    if (grid_size < 100) {
        throw ContractError("equilibrium_pressure: grid_size must be at least 100");
    }
    const double rho = std::min(std::min(alpha, beta), std::min(1.0 - alpha, 1.0 - beta));
    const double u = std::abs(alpha - beta);
    const double v = std::abs(alpha + beta - 1.0);
    const double cconst = c_constant(alpha, beta);
    const double fixed = -(1.0 - std::min(alpha, beta)) * h.psi(0.0) -
                         std::max(alpha + beta - 1.0, 0.0) * h.psi(1.0) - cconst;
    if (rho <= 0.0) {
        // no interior mass to optimize
        EquilibriumSolution sol{IntervalMeasure::zero(MeasureKind::DensityGrid),
                                -h.a * alpha - h.b * beta + fixed, 0.0, 0, 0.0, 0.0};
        return sol;
    }
    const double mass = 2.0 * rho;
    const int n = grid_size;
    const std::vector<double> x = theta_grid(n);
    const std::vector<double> cells = grid_cells(x);

    // kernel with the midpoint-cell diagonal convention
    std::vector<double> kmat(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            const double val = std::log(x[i] - x[j]);
            kmat[static_cast<std::size_t>(i) * n + j] = val;
            kmat[static_cast<std::size_t>(j) * n + i] = val;
        }
        kmat[static_cast<std::size_t>(i) * n + i] = std::log(cells[i] / (2.0 * std::exp(1.0)));
    }
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        double gi = -0.5 * h.psi(x[i]);
        if (u > 0.0) gi += u / 2.0 * std::log(x[i]);
        if (v > 0.0) gi += v / 2.0 * std::log(1.0 - x[i]);
        if (!std::isfinite(gi)) {
            throw InvalidField("equilibrium_pressure: field not finite on the grid");
        }
        g[i] = gi;
    }

    std::vector<double> w(n, mass / n);
    std::vector<double> kw(n, 0.0);  // K w, maintained incrementally
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        const double* row = &kmat[static_cast<std::size_t>(i) * n];
        for (int j = 0; j < n; ++j) acc += row[j] * w[j];
        kw[i] = acc;
    }
    std::vector<double> phi(n);
    int it = 0;
    double res = 0.0;
    double min_gain = std::numeric_limits<double>::infinity();
    for (; it < max_iterations; ++it) {
        for (int i = 0; i < n; ++i) phi[i] = 0.5 * kw[i] + g[i];
        const Kkt kk = kkt_of(w, phi, mass);
        res = kk.residual;
        if (res <= kkt_tol) break;
        // pairwise swap between the best node overall and the worst
        // supported node
        int best = 0, worst = -1;
        for (int i = 1; i < n; ++i) {
            if (phi[i] > phi[best]) best = i;
        }
        for (int i = 0; i < n; ++i) {
            if (w[i] > 1e-15 * mass && (worst < 0 || phi[i] < phi[worst])) worst = i;
        }
        const double gap = phi[best] - phi[worst];
        if (worst < 0 || gap <= 0.0) break;
        const double qcoef =
            0.25 * (kmat[static_cast<std::size_t>(best) * n + best] -
                    2.0 * kmat[static_cast<std::size_t>(best) * n + worst] +
                    kmat[static_cast<std::size_t>(worst) * n + worst]);
        double step = w[worst];
        if (qcoef < 0.0) {
            step = std::min(step, -gap / (2.0 * qcoef));
        }
        min_gain = std::min(min_gain, step * gap + step * step * qcoef);
        w[best] += step;
        w[worst] -= step;
        if (w[worst] < 0.0) w[worst] = 0.0;
        const double* rb = &kmat[static_cast<std::size_t>(best) * n];
        const double* rw = &kmat[static_cast<std::size_t>(worst) * n];
        for (int i = 0; i < n; ++i) {
            kw[i] += step * (rb[i] - rw[i]);
        }
    }

    double quad = 0.0, lin = 0.0;
    for (int i = 0; i < n; ++i) {
        quad += w[i] * kw[i];
        lin += w[i] * g[i];
    }
    const double objective = 0.25 * quad + lin;
    std::vector<double> sx, sw;
    for (int i = 0; i < n; ++i) {
        if (w[i] > 0.0) {
            sx.push_back(x[i]);
            sw.push_back(w[i]);
        }
    }
    EquilibriumSolution sol{IntervalMeasure::density_grid(std::move(sx), std::move(sw)),
                            -h.a * alpha - h.b * beta + fixed + objective, res, it, objective,
                            std::isfinite(min_gain) ? min_gain : 0.0};
    if (res > kkt_tol) {
        throw ConvergenceError("equilibrium_pressure: KKT residual target not reached", sol.value,
                               res);
    }
    return sol;
}

McPressureResult mc_pressure(int n, int k, int l, const PressureHamiltonian& h, int samples,
                             SplitMix64& rng, PressureMethod method) {
    if (samples < 100) {
        throw ContractError("mc_pressure: samples >= 100 required");
    }
    if (k == 0 || l == 0 || l == n) {
        // PQP is the zero matrix (rank-0 factor) or P itself (Q = I), so the
        // integrand is deterministic
        McPressureResult res;
        const double spectral =
            (l == n) ? (n - k) * h.psi(0.0) + k * h.psi(1.0) : n * h.psi(0.0);
        res.estimate = -(h.a * k + h.b * l + spectral) / n;
        res.std_error = 0.0;
        return res;
    }
    if (!(0 < k && k <= l && k + l <= n)) {
        throw InvalidRank("mc_pressure requires 0 < k <= l and k + l <= N");
    }
    double lo = h.psi(0.0), hi = h.psi(0.0);
    for (int i = 0; i <= 256; ++i) {
        const double val = h.psi(static_cast<double>(i) / 256.0);
        if (!std::isfinite(val)) {
            throw InvalidField("mc_pressure: psi must be finite on [0,1]");
        }
        lo = std::min(lo, val);
        hi = std::max(hi, val);
    }
    const double oscillation = n * (hi - lo);
    if (method == PressureMethod::Auto) {
        method = oscillation > 40.0 ? PressureMethod::TiltedChain : PressureMethod::Direct;
    }
    if (method == PressureMethod::Direct && oscillation > 40.0) {
        throw GuardError(
            "mc_pressure: N * osc(psi) > 40; direct reweighting variance is uncontrolled "
            "(use the tilted-chain method or the equilibrium solver)");
    }
    return method == PressureMethod::Direct ? direct_pressure(n, k, l, h, samples, rng)
                                            : tilted_chain_pressure(n, k, l, h, samples, rng);
}

double pair_hamiltonian_trace(const PairState& state, const PressureHamiltonian& h) {
    return h.a * state.alpha() + h.b * state.beta() + tau_psi_efe(state, h.psi);
}

double eta_pair_bound(const PairState& state, std::span<const PressureHamiltonian> family,
                      int grid_size) {
    if (family.empty()) {
        throw ContractError("eta_pair_bound: candidate family must be nonempty");
    }
    double best = std::numeric_limits<double>::infinity();
    for (const PressureHamiltonian& h : family) {
        const EquilibriumSolution sol =
            equilibrium_pressure(state.alpha(), state.beta(), h, grid_size);
        best = std::min(best, pair_hamiltonian_trace(state, h) + sol.value);
    }
    return best;
}

PressureHamiltonian conjugate_field(const PairState& state) {
    const IntervalMeasure& nu = state.nu();
    if (nu.size() < 2) {
        throw ContractError("conjugate_field: state needs interior support");
    }
    const auto& xs = nu.support();
    const double u = std::abs(state.alpha() - state.beta());
    const double v = std::abs(state.alpha() + state.beta() - 1.0);
    std::vector<double> vals(xs.size());
    const std::vector<double> cells = nu.cell_widths();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double pot = nu.weights()[i] * std::log(cells[i] / (2.0 * std::exp(1.0)));
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            pot += nu.weights()[j] * std::log(std::abs(xs[i] - xs[j]));
        }
        double val = pot;  // 2 * (1/2) * potential
        if (u > 0.0) val += u * std::log(xs[i]);
        if (v > 0.0) val += v * std::log(1.0 - xs[i]);
        vals[i] = val;
    }
    PressureHamiltonian h;
    h.psi = FunctionOnUnitInterval::interpolant(std::vector<double>(xs), std::move(vals));
    return h;
}

double pressure_over_traces(const PressureHamiltonian& h, int alpha_steps, int grid_size) {
    if (alpha_steps < 2) {
        throw ContractError("pressure_over_traces: need at least 2 sweep points");
    }
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < alpha_steps; ++i) {
        const double a = static_cast<double>(i) / (alpha_steps - 1);
        for (int j = 0; j < alpha_steps; ++j) {
            const double b = static_cast<double>(j) / (alpha_steps - 1);
            best = std::max(best, equilibrium_pressure(a, b, h, grid_size).value);
        }
    }
    return best;
}

}  // namespace projlab
