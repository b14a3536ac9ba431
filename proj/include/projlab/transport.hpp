#pragma once

#include "projlab/entropy.hpp"
#include "projlab/measure.hpp"
#include "projlab/pair_state.hpp"

namespace projlab {

/// Quadratic Wasserstein distance between equal-mass measures on [0,1] via
/// the merged quantile functions; exact for discrete measures.
double wasserstein2_interval(const IntervalMeasure& mu1, const IntervalMeasure& mu2);

/// Result of the transportation-cost surrogate check
///   (1/sqrt(5)) W_2(dist(pqp), dist_free(pqp))  <=  sqrt(-2 chi).
/// The left side descends from |pqp - p'q'p'|_2 <= 2|p-p'|_2 + |q-q'|_2 and
/// (2a+b)^2 <= 5(a^2+b^2); see docs/formulas.md for the derivation.
struct TransportReport {
    double lhs = 0.0;
    double rhs = 0.0;  // +inf when chi = -inf
    double slack = 0.0;
    bool holds = false;
    bool rhs_infinite = false;
};

/// Evaluates the surrogate inequality for a pair state against the free
/// reference with the same traces.
TransportReport surrogate_tci_check(const PairState& state, int grid_size = 2000);

struct HessianTrial {
    double second_derivative = 0.0;
    double denominator = 0.0;
    double ratio = 0.0;
};

struct HessianCheckReport {
    double worst_ratio = 0.0;
    std::vector<HessianTrial> trials;
};

/// Numerical audit of the geodesic Hessian bound
///   |d^2/dt^2 N Tr psi(C1 C2 C1)|  <=  N (6 |psi'| + 4.5 |psi''|) (|X1|^2 + |X2|^2)
/// at t=0, over random projection pairs and random unit tangents. The second
/// derivative is a Richardson-refined central difference (h = 1e-3).
/// Requires psi to carry d1_bound and d2_bound.
HessianCheckReport hessian_bound_check(int n, int k, int l, const FunctionOnUnitInterval& psi,
                                       int trials, SplitMix64& rng, int threads = 1);

}  // namespace projlab
