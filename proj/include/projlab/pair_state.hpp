#pragma once

#include <string_view>

#include "projlab/linalg.hpp"
#include "projlab/measure.hpp"

namespace projlab {

/// Tracial state of a projection pair in canonical form: the four corner
/// weights tau(E_11), tau(E_10), tau(E_01), tau(E_00) plus the interior
/// angle measure nu on (0,1). On the generic part the pair acts as the 2x2
/// blocks e(x) = [[1,0],[0,0]], f(x) = [[x, s],[s, 1-x]] with s=sqrt(x(1-x)),
/// under the half-trace convention tau = (1/2) Int Tr_2(.) dnu, so
/// nu((0,1)) = tau(E) and tau(e) = a11 + a10 + nu/2.
class PairState {
public:
    /// Build from corner weights and interior measure; alpha and beta are
    /// derived from the trace bookkeeping, so the invariants hold exactly.
    static PairState create(double a11, double a10, double a01, double a00, IntervalMeasure nu);

    /// Build from explicitly supplied traces, validating consistency to 1e-10.
    static PairState validated(double alpha, double beta, double a11, double a10, double a01,
                               double a00, IntervalMeasure nu);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double a11() const { return a11_; }
    double a10() const { return a10_; }
    double a01() const { return a01_; }
    double a00() const { return a00_; }
    const IntervalMeasure& nu() const { return nu_; }

private:
    PairState(double alpha, double beta, double a11, double a10, double a01, double a00,
              IntervalMeasure nu);
    double alpha_, beta_, a11_, a10_, a01_, a00_;
    IntervalMeasure nu_;
};

/// Canonical form of a concrete matrix pair: corner weights from the
/// eigenvalue counts of PQP at {0,1} (threshold 1e-8) and rank arithmetic,
/// interior eigenvalues as sample atoms of weight 2/N each.
PairState canonical_form(const ProjectionMatrix& p, const ProjectionMatrix& q);

/// Mixed moment tau(word), word over letters 'e' (first projection) and
/// 'f' (second). Corner parts contribute indicator products; the generic
/// part contributes (1/2) Int Tr_2(word(e(x), f(x))) dnu.
double pair_moment(const PairState& state, std::string_view word);

/// Functional-calculus pushforward: replaces the second projection by its
/// reparametrized copy, so nu maps through psi while traces are preserved.
/// Interior mass that psi sends to 0 splits evenly into the E_10/E_01
/// corners, mass sent to 1 into E_11/E_00.
PairState pushforward_state(const PairState& state, const FunctionOnUnitInterval& psi);

/// The unique pair state with chi = 0 at the given traces: corner weights
/// max{a+b-1,0} etc., and the explicit interior density
/// sqrt((x-xi)(eta-x)) / (2 pi x(1-x)) on (xi, eta),
/// xi,eta = a+b-2ab -+ sqrt(4ab(1-a)(1-b)), rescaled to total mass 2 rho,
/// discretized on an edge-adapted grid (x = xi + (eta-xi) sin^2(theta/2)).
PairState free_pair_state(double alpha, double beta, int grid_size = 4000);

/// State of the pair (1-p, q): corners permute, nu reflects through x -> 1-x.
PairState complement_first(const PairState& state);

/// tau(psi(efe)): corner values psi(0)/psi(1) plus the half-trace integral
/// (1/2) Int (psi(x) + psi(0)) dnu.
double tau_psi_efe(const PairState& state, const FunctionOnUnitInterval& psi);

/// Full spectral distribution of pqp as a unit-mass measure on [0,1]:
/// atom a00+a01+a10+nu/2 at 0, atom a11 at 1, interior nu/2.
IntervalMeasure pqp_distribution(const PairState& state);

}  // namespace projlab
