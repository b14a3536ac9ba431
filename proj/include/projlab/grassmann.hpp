#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "projlab/ext_real.hpp"
#include "projlab/linalg.hpp"
#include "projlab/measure.hpp"

namespace projlab {

/// Word in the generators of an n-tuple of projections, letters are
/// 0-based generator indices.
using Word = std::vector<int>;

/// Lexicographically smallest cyclic rotation; traces are invariant under
/// rotation, so targets are stored per canonical word.
Word canonical_cyclic(const Word& w);

/// Invariant-measure sample from the rank-k projections: U P_k U* with
/// Haar U. k = 0 and k = N return the exact constant matrices.
ProjectionMatrix sample_projection(int n, int k, SplitMix64& rng);

/// Eigenvalues of PQP restricted to range(P), ascending, for an independent
/// pair (P, Q) of Haar projections of ranks (k, l). Realized matrix-free as
/// the spectrum of W W* with W the top-left k x l corner of a Haar unitary.
RealVector sample_pair_eigenvalues(int n, int k, int l, SplitMix64& rng);

struct GibbsPairSpec {
    int n = 0;
    int k = 0;
    int l = 0;
    FunctionOnUnitInterval psi;
};

/// Metropolis random-walk sampler for the pair-eigenvalue density reweighted
/// by exp(-N sum_i psi(x_i)): per-coordinate Gaussian steps of width
/// 0.5/sqrt(N), reflected at the boundary. One iteration = one full sweep.
/// Returns the state after burn_in + thin sweeps, ascending.
RealVector sample_gibbs_pair(const GibbsPairSpec& spec, SplitMix64& rng, int burn_in, int thin);

/// Long-run driver used by estimators and tests: burn_in sweeps, then
/// `count` samples taken every `thin` sweeps from one chain.
std::vector<RealVector> gibbs_chain(const GibbsPairSpec& spec, SplitMix64& rng, int burn_in,
                                    int thin, int count);

/// Matrix pair with the canonical sine-cosine block structure at the given
/// interior angles, conjugated by a Haar unitary. Used to realize weighted
/// ensembles as matrices.
std::pair<ProjectionMatrix, ProjectionMatrix> pair_from_angles(int n, int k, int l,
                                                               const RealVector& angles,
                                                               SplitMix64& rng);

/// Moment-window specification for a tuple of projections: every word moment
/// of length <= m must match its target to within eps. Words are
/// deduplicated by cyclic equivalence on construction.
class MicrostateSpec {
public:
    MicrostateSpec(int n_vars, std::vector<int> ranks, int dim, int max_len, double eps,
                   const std::map<Word, double>& targets);

    int n_vars() const { return n_vars_; }
    const std::vector<int>& ranks() const { return ranks_; }
    int dim() const { return dim_; }
    int max_len() const { return max_len_; }
    double eps() const { return eps_; }
    const std::map<Word, double>& targets() const { return targets_; }

private:
    int n_vars_, dim_, max_len_;
    double eps_;
    std::vector<int> ranks_;
    std::map<Word, double> targets_;
};

/// True iff every targeted word moment of the tuple lies strictly within eps
/// of its target.
bool microstate_membership(const std::vector<ProjectionMatrix>& ps, const MicrostateSpec& spec);

struct MicrostateEstimate {
    ExtReal log_prob_rate;  // (1/N^2) log(accepted/samples); -inf when none accepted
    long accepted = 0;
    long samples = 0;
    double wilson_low = 0.0;   // 95% Wilson interval for the acceptance rate
    double wilson_high = 0.0;
};

/// Rejection-count estimate of the invariant-measure volume of the
/// microstate window at fixed N.
MicrostateEstimate estimate_microstate_logprob(const MicrostateSpec& spec, long samples,
                                               SplitMix64& rng);

}  // namespace projlab
