#pragma once

#include "projlab/ext_real.hpp"
#include "projlab/measure.hpp"
#include "projlab/pair_state.hpp"

namespace projlab {

/// Component breakdown of the two-projection entropy
///   chi = 1/4 Sigma(nu) + |a-b|/2 Int log x dnu + |a+b-1|/2 Int log(1-x) dnu - C,
/// valid when the corner weights take their extremal values; otherwise -inf.
struct EntropyReport {
    ExtReal chi;
    double sigma_term = 0.0;    // 1/4 Sigma(nu)
    double logx_term = 0.0;     // |alpha-beta|/2 Int log x dnu
    double log1mx_term = 0.0;   // |alpha+beta-1|/2 Int log(1-x) dnu
    double c_term = 0.0;        // C(alpha, beta)
    double rho = 0.0;           // min{alpha, beta, 1-alpha, 1-beta}
    bool compatible = false;    // corner weights extremal (tol 1e-9)
};

/// Logarithmic energy Sigma(nu) = Int Int log|x-y| dnu dnu over the interior.
/// DensityGrid: off-diagonal double sum plus the midpoint-cell diagonal
///   convention log|x_i - x_i| -> log(cell_i / 2e), which removes the O(h log h)
///   bias of plain diagonal omission.
/// Samples: the off-diagonal estimator sum_{i != j} w_i w_j log|x_i - x_j|.
/// Atoms: the exact energy, which is -inf whenever an atom carries positive
///   weight (the diagonal is a genuine log 0).
ExtReal log_energy(const IntervalMeasure& nu);

/// B(s,t) = (1+s)^2/2 log(1+s) - s^2/2 log s + (1+t)^2/2 log(1+t)
///        - t^2/2 log t - (2+s+t)^2/2 log(2+s+t) + (1+s+t)^2/2 log(1+s+t),
/// with u^2 log u continued by 0 at u = 0. Throws std::domain_error for
/// negative arguments.
double b_function(double s, double t);

/// C = rho^2 B(|alpha-beta|/rho, |alpha+beta-1|/rho), zero when rho = 0.
/// Evaluated in the variables (u, v, rho) with the u^2 log u cancellations
/// done analytically, so tiny rho never overflows.
double c_constant(double alpha, double beta);

EntropyReport chi_proj_pair(const PairState& state);

/// Entropy change under the functional-calculus pushforward by increasing psi:
///   1/4 IntInt log|psi^[1](x,y)| dnu dnu
///   + (beta-alpha)/2 Int log(psi(x)/x) dnu
///   + (1-alpha-beta)/2 Int log((1-psi(x))/(1-x)) dnu,
/// where psi^[1] is the divided quotient, extended by psi' on the diagonal.
double change_of_variable_delta(const PairState& state, const FunctionOnUnitInterval& psi);

}  // namespace projlab
