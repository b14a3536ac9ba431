#include "projlab/entropy.hpp"

#include <cmath>
#include <stdexcept>

#include "projlab/errors.hpp"

namespace projlab {

namespace {

constexpr double kCompatTol = 1e-9;

double half_sq_log(double u) {
    return u <= 0.0 ? 0.0 : 0.5 * u * u * std::log(u);
}

// Off-diagonal part of the double log sum, shared by all measure kinds.
double offdiag_energy(const std::vector<double>& x, const std::vector<double>& w) {
    const std::size_t n = x.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            row += w[j] * std::log(x[i] - x[j]);
        }
        s += w[i] * row;
    }
    return 2.0 * s;
}

}  // namespace

ExtReal log_energy(const IntervalMeasure& nu) {
    const auto& x = nu.support();
    const auto& w = nu.weights();
    if (x.empty()) {
        return ExtReal(0.0);
    }
    switch (nu.kind()) {
        case MeasureKind::Atoms:
            // every atom contributes w^2 log 0 on the diagonal
            return ExtReal::neg_inf();
        case MeasureKind::Samples:
            return ExtReal(offdiag_energy(x, w));
        case MeasureKind::DensityGrid: {
            double s = offdiag_energy(x, w);
            const std::vector<double> cells = nu.cell_widths();
            for (std::size_t i = 0; i < x.size(); ++i) {
                s += w[i] * w[i] * std::log(cells[i] / (2.0 * std::exp(1.0)));
            }
            return ExtReal(s);
        }
    }
    return ExtReal(0.0);  // unreachable
}

double b_function(double s, double t) {
    if (s < 0.0 || t < 0.0) {
        throw std::domain_error("b_function: arguments must be nonnegative");
    }
    return half_sq_log(1.0 + s) - half_sq_log(s) + half_sq_log(1.0 + t) - half_sq_log(t) -
           half_sq_log(2.0 + s + t) + half_sq_log(1.0 + s + t);
}

double c_constant(double alpha, double beta) {
    if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0) {
        throw ContractError("c_constant: traces must lie in [0,1]");
    }
    const double rho = std::min(std::min(alpha, beta), std::min(1.0 - alpha, 1.0 - beta));
    if (rho <= 0.0) {
        return 0.0;
    }
    const double u = std::abs(alpha - beta);
    const double v = std::abs(alpha + beta - 1.0);
    // rho^2 B(u/rho, v/rho) with the log rho contributions collected; every
    // logarithm below has argument >= rho, so nothing overflows as rho -> 0.
    return half_sq_log(rho + u) - half_sq_log(u) + half_sq_log(rho + v) - half_sq_log(v) -
           half_sq_log(2.0 * rho + u + v) + half_sq_log(rho + u + v) + half_sq_log(rho);
}

EntropyReport chi_proj_pair(const PairState& state) {
    EntropyReport r;
    const double alpha = state.alpha();
    const double beta = state.beta();
    r.rho = std::min(std::min(alpha, beta), std::min(1.0 - alpha, 1.0 - beta));
    r.c_term = c_constant(alpha, beta);
    r.compatible = std::abs(state.a11() - std::max(alpha + beta - 1.0, 0.0)) <= kCompatTol &&
                   std::abs(state.a00() - std::max(1.0 - alpha - beta, 0.0)) <= kCompatTol &&
                   std::abs(state.a10() - std::max(alpha - beta, 0.0)) <= kCompatTol &&
                   std::abs(state.a01() - std::max(beta - alpha, 0.0)) <= kCompatTol;
    if (!r.compatible) {
        r.chi = ExtReal::neg_inf();
        return r;
    }
    const ExtReal sigma = log_energy(state.nu());
    r.logx_term =
        std::abs(alpha - beta) / 2.0 * state.nu().integrate([](double x) { return std::log(x); });
    r.log1mx_term = std::abs(alpha + beta - 1.0) / 2.0 *
                    state.nu().integrate([](double x) { return std::log(1.0 - x); });
    if (!sigma.is_finite()) {
        r.chi = ExtReal::neg_inf();
        return r;
    }
    r.sigma_term = 0.25 * sigma.value();
    r.chi = ExtReal(r.sigma_term + r.logx_term + r.log1mx_term - r.c_term);
    return r;
}

double change_of_variable_delta(const PairState& state, const FunctionOnUnitInterval& psi) {
    const IntervalMeasure& nu = state.nu();
    check_increasing_on(psi, nu.support());
    const auto& x = nu.support();
    const auto& w = nu.weights();
    const std::size_t n = x.size();
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            row += w[j] * std::log(std::abs(divided_quotient(psi, x[i], x[j])));
        }
        quad += 2.0 * w[i] * row;
        quad += w[i] * w[i] * std::log(std::abs(divided_quotient(psi, x[i], x[i])));
    }
    double v = 0.25 * quad;
    const double cb = (state.beta() - state.alpha()) / 2.0;
    const double cc = (1.0 - state.beta() - state.alpha()) / 2.0;
    if (cb != 0.0) {
        v += cb * nu.integrate([&](double t) { return std::log(psi(t) / t); });
    }
    if (cc != 0.0) {
        v += cc * nu.integrate([&](double t) { return std::log((1.0 - psi(t)) / (1.0 - t)); });
    }
    return v;
}

}  // namespace projlab
