#include "projlab/pair_state.hpp"

#include <cmath>
#include <numbers>

#include "projlab/errors.hpp"

namespace projlab {

namespace {
constexpr double kEndpointTol = 1e-8;  // eigenvalue-at-{0,1} classification
}

PairState::PairState(double alpha, double beta, double a11, double a10, double a01, double a00,
                     IntervalMeasure nu)
    : alpha_(alpha), beta_(beta), a11_(a11), a10_(a10), a01_(a01), a00_(a00), nu_(std::move(nu)) {}

PairState PairState::create(double a11, double a10, double a01, double a00, IntervalMeasure nu) {
    if (a11 < -1e-12 || a10 < -1e-12 || a01 < -1e-12 || a00 < -1e-12) {
        throw ContractError("PairState: negative corner weight");
    }
    if (nu.atom0() != 0.0 || nu.atom1() != 0.0) {
        throw ContractError("PairState: nu must have no endpoint atoms");
    }
    const double m = nu.interior_mass();
    const double total = a11 + a10 + a01 + a00 + m;
    if (std::abs(total - 1.0) > 1e-10) {
        throw ContractError("PairState: corner weights and nu mass must sum to 1");
    }
    const double alpha = a11 + a10 + m / 2.0;
    const double beta = a11 + a01 + m / 2.0;
    return PairState(alpha, beta, a11, a10, a01, a00, std::move(nu));
}

PairState PairState::validated(double alpha, double beta, double a11, double a10, double a01,
                               double a00, IntervalMeasure nu) {
    PairState s = create(a11, a10, a01, a00, std::move(nu));
    if (std::abs(s.alpha() - alpha) > 1e-10 || std::abs(s.beta() - beta) > 1e-10) {
        throw ContractError("PairState: supplied traces are inconsistent with corners and nu");
    }
    return s;
}

PairState canonical_form(const ProjectionMatrix& p, const ProjectionMatrix& q) {
    const int n = p.dim();
    if (q.dim() != n) {
        throw InvalidDimension("canonical_form: dimension mismatch");
    }
    const int k = p.rank();
    const int l = q.rank();

    int n11 = 0, n10 = 0;
    std::vector<double> xs, ws;
    if (k > 0) {
        // PQP restricted to range(P): basis from the rank-k eigenspace of P.
        EigenDecomposition ep = hermitian_eigen(p.matrix());
        const ComplexMatrix basis = ep.vectors.rightCols(k);  // eigenvalues ascending
        const ComplexMatrix m = basis.adjoint() * q.matrix() * basis;
        EigenDecomposition em = hermitian_eigen((m + ComplexMatrix(m.adjoint())) / 2.0);
        for (int i = 0; i < k; ++i) {
            const double x = std::min(1.0, std::max(0.0, em.values(i)));
            if (x <= kEndpointTol) {
                ++n10;
            } else if (x >= 1.0 - kEndpointTol) {
                ++n11;
            } else {
                xs.push_back(x);
                ws.push_back(2.0 / n);
            }
        }
    }
    const int interior = static_cast<int>(xs.size());
    // Remaining corner ranks follow from rank arithmetic of the sine-cosine
    // block structure: l = n11 + n01 + interior, N = sum of corners + 2*interior.
    const int n01 = l - n11 - interior;
    const int n00 = n - k - n01 - interior;
    if (n01 < 0 || n00 < 0) {
        throw ContractError("canonical_form: inconsistent spectra (rank bookkeeping failed)");
    }
    return PairState::create(static_cast<double>(n11) / n, static_cast<double>(n10) / n,
                             static_cast<double>(n01) / n, static_cast<double>(n00) / n,
                             IntervalMeasure::samples(std::move(xs), std::move(ws)));
}

namespace {

// Word value on a corner where e, f act as the scalars (ev, fv).
double corner_word_value(std::string_view word, double ev, double fv) {
    double v = 1.0;
    for (char c : word) {
        v *= (c == 'e') ? ev : fv;
        if (v == 0.0) return 0.0;
    }
    return v;
}

// Tr_2 of word(e(x), f(x)) with the canonical 2x2 blocks.
double generic_word_trace(std::string_view word, double x) {
    const double s = std::sqrt(x * (1.0 - x));
    // accumulate the 2x2 product
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
    for (char ch : word) {
        double e11, e12, e21, e22;
        if (ch == 'e') {
            e11 = 1.0, e12 = 0.0, e21 = 0.0, e22 = 0.0;
        } else {
            e11 = x, e12 = s, e21 = s, e22 = 1.0 - x;
        }
        const double na = a * e11 + b * e21;
        const double nb = a * e12 + b * e22;
        const double nc = c * e11 + d * e21;
        const double nd = c * e12 + d * e22;
        a = na, b = nb, c = nc, d = nd;
    }
    return a + d;
}

}  // namespace

double pair_moment(const PairState& state, std::string_view word) {
    for (char c : word) {
        if (c != 'e' && c != 'f') {
            throw ContractError("pair_moment: word letters must be 'e' or 'f'");
        }
    }
    if (word.empty()) {
        return 1.0;  // tau(1)
    }
    double v = state.a11() * corner_word_value(word, 1.0, 1.0) +
               state.a10() * corner_word_value(word, 1.0, 0.0) +
               state.a01() * corner_word_value(word, 0.0, 1.0) +
               state.a00() * corner_word_value(word, 0.0, 0.0);
    v += 0.5 * state.nu().integrate([&](double x) { return generic_word_trace(word, x); });
    return v;
}

PairState pushforward_state(const PairState& state, const FunctionOnUnitInterval& psi) {
    const IntervalMeasure& nu = state.nu();
    check_increasing_on(psi, nu.support());
    std::vector<double> xs, ws;
    double to0 = 0.0, to1 = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        const double y = psi(nu.support()[i]);
        const double w = nu.weights()[i];
        if (y <= 0.0) {
            to0 += w;
        } else if (y >= 1.0) {
            to1 += w;
        } else {
            xs.push_back(y);
            ws.push_back(w);
        }
    }
    // Escaping mass at 0 splits the 2x2 block into E_10 + E_01, at 1 into
    // E_11 + E_00, half weight each; traces are preserved by construction.
    return PairState::create(state.a11() + to1 / 2.0, state.a10() + to0 / 2.0,
                             state.a01() + to0 / 2.0, state.a00() + to1 / 2.0,
                             IntervalMeasure::make(nu.kind(), std::move(xs), std::move(ws)));
}

PairState free_pair_state(double alpha, double beta, int grid_size) {
    if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0) {
        throw ContractError("free_pair_state: traces must lie in [0,1]");
    }
    if (grid_size < 2) {
        throw ContractError("free_pair_state: grid_size must be at least 2");
    }
    const double a11 = std::max(alpha + beta - 1.0, 0.0);
    const double a00 = std::max(1.0 - alpha - beta, 0.0);
    const double a10 = std::max(alpha - beta, 0.0);
    const double a01 = std::max(beta - alpha, 0.0);
    const double rho = std::min(std::min(alpha, beta), std::min(1.0 - alpha, 1.0 - beta));
    if (rho <= 0.0) {
        return PairState::create(a11, a10, a01, a00, IntervalMeasure::zero(MeasureKind::DensityGrid));
    }
    const double disc = 4.0 * alpha * beta * (1.0 - alpha) * (1.0 - beta);
    const double mid = alpha + beta - 2.0 * alpha * beta;
    const double xi = mid - std::sqrt(disc);
    const double eta = mid + std::sqrt(disc);
    // Edge-adapted substitution x = xi + (eta-xi) sin^2(theta/2): the
    // transformed integrand of the square-root density is smooth, so the
    // uniform midpoint rule in theta is spectrally accurate.
    const int n = grid_size;
    std::vector<double> xs(n), ws(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double theta = std::numbers::pi * (i + 0.5) / n;
        const double st = std::sin(theta);
        const double x = xi + (eta - xi) * std::sin(theta / 2.0) * std::sin(theta / 2.0);
        const double g = (eta - xi) * (eta - xi) / (8.0 * std::numbers::pi) * st * st /
                         (x * (1.0 - x));
        xs[i] = x;
        ws[i] = g * std::numbers::pi / n;
        total += ws[i];
    }
    // The printed density integrates to rho; the half-trace convention needs
    // nu((0,1)) = tau(E) = 2 rho, so rescale. The accumulated sum is pinned
    // to exactly 2 rho so the derived traces cannot drift.
    const double scale = 2.0 * rho / total;
    for (double& w : ws) w *= scale;
    for (int pass = 0; pass < 2; ++pass) {
        double acc = 0.0;
        for (double w : ws) acc += w;
        ws[n / 2] += 2.0 * rho - acc;
    }
    return PairState::create(a11, a10, a01, a00,
                             IntervalMeasure::density_grid(std::move(xs), std::move(ws)));
}

PairState complement_first(const PairState& state) {
    return PairState::create(state.a01(), state.a00(), state.a11(), state.a10(),
                             state.nu().reflected());
}

double tau_psi_efe(const PairState& state, const FunctionOnUnitInterval& psi) {
    const double psi0 = psi(0.0);
    const double psi1 = psi(1.0);
    if (!std::isfinite(psi0) || !std::isfinite(psi1)) {
        throw InvalidField("tau_psi_efe: field not finite at the endpoints");
    }
    double v = state.a11() * psi1 + (state.a10() + state.a01() + state.a00()) * psi0;
    v += 0.5 * state.nu().integrate([&](double x) { return psi(x) + psi0; });
    return v;
}

IntervalMeasure pqp_distribution(const PairState& state) {
    const IntervalMeasure& nu = state.nu();
    std::vector<double> xs(nu.support());
    std::vector<double> ws(nu.weights());
    for (double& w : ws) w /= 2.0;
    const double atom0 = state.a00() + state.a01() + state.a10() + nu.interior_mass() / 2.0;
    return IntervalMeasure::make(nu.kind(), std::move(xs), std::move(ws), atom0, state.a11());
}

}  // namespace projlab
