#pragma once

#include <span>

#include "projlab/entropy.hpp"
#include "projlab/measure.hpp"
#include "projlab/pair_state.hpp"
#include "projlab/rng.hpp"

namespace projlab {

/// Two-projection hamiltonian h = A e + B f + psi(efe).
struct PressureHamiltonian {
    double a = 0.0;
    double b = 0.0;
    FunctionOnUnitInterval psi = FunctionOnUnitInterval::zero();
};

struct EquilibriumSolution {
    IntervalMeasure nu_star;   // maximizer, mass 2 rho
    double value = 0.0;        // the pressure, constants included
    double kkt_residual = 0.0; // potential flatness on support / excess off it
    int iterations = 0;
    double objective = 0.0;      // maximized functional value (diagnostics)
    double min_step_gain = 0.0;  // smallest per-iteration objective increase
};

/// Exact single-projection pressure: -alpha h1 - (1-alpha) h2.
double pressure_single(double alpha, double h1, double h2);

/// Two-projection pressure by equilibrium-measure optimization:
///   pi(h) = -A alpha - B beta - (1 - min(alpha,beta)) psi(0)
///           - max(alpha+beta-1, 0) psi(1) - C + sup_nu G(nu),
///   G(nu) = 1/4 Sigma(nu) + Int g dnu over measures of mass 2 rho, with
///   g = -psi/2 + |alpha-beta|/2 log x + |alpha+beta-1|/2 log(1-x).
/// The strictly concave discretized functional is maximized by pairwise
/// conditional-gradient steps (mass swaps between the best and worst grid
/// node, exact line search), which keeps iterates feasible and the objective
/// monotone. Throws ConvergenceError with the best value when the KKT
/// residual target is not met.
EquilibriumSolution equilibrium_pressure(double alpha, double beta,
                                         const PressureHamiltonian& h, int grid_size = 2000,
                                         int max_iterations = 5000, double kkt_tol = 1e-4);

enum class PressureMethod {
    Auto,           // Direct when N (max psi - min psi) <= 40, TiltedChain above
    Direct,         // reweight the plain angle sampler by exp(-N sum psi)
    TiltedChain,    // thermodynamic integration over tilted Gibbs chains
};

struct McPressureResult {
    double estimate = 0.0;
    double std_error = 0.0;
    PressureMethod method_used = PressureMethod::Direct;
};

/// Monte Carlo estimate of (1/N^2) log Int exp(-N Tr h(P,Q)).
/// Direct mode draws `samples` independent angle tuples and averages the
/// weights by log-sum-exp (jackknife standard error); it refuses with
/// GuardError when N (max psi - min psi) > 40, where the reweighting
/// variance is uncontrolled. The tilted-chain mode integrates the mean
/// field energy of exp(-s N Tr psi(PQP)) ensembles over s in [0,1]
/// (Gauss-Legendre nodes), which stays accurate for any field strength.
McPressureResult mc_pressure(int n, int k, int l, const PressureHamiltonian& h, int samples,
                             SplitMix64& rng, PressureMethod method = PressureMethod::Auto);

/// tau(h) for a pair state: A alpha + B beta + tau(psi(efe)).
double pair_hamiltonian_trace(const PairState& state, const PressureHamiltonian& h);

/// Legendre upper bound min_h { tau(h) + pi(h) } over a candidate family;
/// always >= chi of the state up to solver tolerance.
double eta_pair_bound(const PairState& state, std::span<const PressureHamiltonian> family,
                      int grid_size = 1500);

/// Candidate hamiltonian whose equilibrium measure is the state's own nu:
/// psi(x) = 2 [ (1/2) Int log|x-y| dnu(y)
///              + |alpha-beta|/2 log x + |alpha+beta-1|/2 log(1-x) ],
/// tabulated on the support and linearly interpolated. Feeding it to
/// eta_pair_bound probes duality attainment.
PressureHamiltonian conjugate_field(const PairState& state);

/// Rank-free pressure max over a grid of trace values (both traces swept).
double pressure_over_traces(const PressureHamiltonian& h, int alpha_steps, int grid_size = 800);

}  // namespace projlab
