#include "projlab/grassmann.hpp"

#include <algorithm>
#include <cmath>

#include "projlab/errors.hpp"

namespace projlab {

Word canonical_cyclic(const Word& w) {
    if (w.empty()) {
        throw ContractError("words must be nonempty");
    }
    Word best = w;
    Word rot = w;
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return best;
}

ProjectionMatrix sample_projection(int n, int k, SplitMix64& rng) {
    if (n < 1) {
        throw InvalidDimension("sample_projection requires N >= 1");
    }
    if (k < 0 || k > n) {
        throw InvalidRank("sample_projection requires 0 <= k <= N");
    }
    if (k == 0) {
        return ProjectionMatrix::unchecked(ComplexMatrix::Zero(n, n), 0);
    }
    if (k == n) {
        return ProjectionMatrix::unchecked(ComplexMatrix::Identity(n, n), n);
    }
    const ComplexMatrix u = sample_haar_unitary(n, rng);
    const ComplexMatrix uk = u.leftCols(k);
    ComplexMatrix p = uk * uk.adjoint();
    p = (p + ComplexMatrix(p.adjoint())) / 2.0;
    return ProjectionMatrix::unchecked(std::move(p), k);
}

RealVector sample_pair_eigenvalues(int n, int k, int l, SplitMix64& rng) {
    if (!(0 < k && k <= l && k + l <= n)) {
        throw InvalidRank("sample_pair_eigenvalues requires 0 < k <= l and k + l <= N");
    }
    // By unitary invariance the law of spec(PQP|range P) only depends on the
    // relative position of the ranges, so two independent Haar frames suffice.
    const ComplexMatrix u = sample_haar_unitary(n, rng);
    const ComplexMatrix v = sample_haar_unitary(n, rng);
    const ComplexMatrix w = u.leftCols(k).adjoint() * v.leftCols(l);
    ComplexMatrix m = w * w.adjoint();
    m = (m + ComplexMatrix(m.adjoint())) / 2.0;
    EigenDecomposition ed = hermitian_eigen(m);
    RealVector out = ed.values;
    for (int i = 0; i < out.size(); ++i) {
        out(i) = std::min(1.0, std::max(0.0, out(i)));
    }
    return out;
}

namespace {

// Log of the unnormalized pair-eigenvalue density with field psi:
//   sum_i [(l-k) log x_i + (N-k-l) log(1-x_i) - N psi(x_i)] + 2 sum_{i<j} log|x_i-x_j|.
// The sampler only ever needs per-coordinate deltas of this.
struct GibbsChain {
    const GibbsPairSpec& spec;
    std::vector<double> x;
    double sigma;

    GibbsChain(const GibbsPairSpec& s, SplitMix64& rng) : spec(s) {
        const int k = spec.k;
        x.resize(k);
        // spread the initial state over (0,1)
        for (int i = 0; i < k; ++i) {
            x[i] = (i + 0.5 + 0.1 * rng.next_double()) / (k + 1.0);
        }
        sigma = 0.5 / std::sqrt(static_cast<double>(spec.n));
    }

    double site_logdensity(double xi, int skip) const {
        const double a = spec.l - spec.k;
        const double b = spec.n - spec.k - spec.l;
        double v = a * std::log(xi) + b * std::log(1.0 - xi) - spec.n * spec.psi(xi);
        for (int j = 0; j < static_cast<int>(x.size()); ++j) {
            if (j == skip) continue;
            v += 2.0 * std::log(std::abs(xi - x[j]));
        }
        return v;
    }

    void sweep(SplitMix64& rng) {
        for (int i = 0; i < static_cast<int>(x.size()); ++i) {
            double prop = x[i] + sigma * rng.next_normal();
            // reflect into (0,1); the proposal stays symmetric
            while (prop <= 0.0 || prop >= 1.0) {
                if (prop <= 0.0) prop = -prop;
                if (prop >= 1.0) prop = 2.0 - prop;
            }
            const double dl = site_logdensity(prop, i) - site_logdensity(x[i], i);
            if (dl >= 0.0 || std::log(1.0 - rng.next_double()) < dl) {
                x[i] = prop;
            }
        }
    }

    RealVector sorted_state() const {
        std::vector<double> s = x;
        std::sort(s.begin(), s.end());
        RealVector out(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) out(i) = s[i];
        return out;
    }
};

void validate_gibbs_spec(const GibbsPairSpec& spec) {
    if (!(0 < spec.k && spec.k <= spec.l && spec.k + spec.l <= spec.n)) {
        throw InvalidRank("gibbs pair sampler requires 0 < k <= l and k + l <= N");
    }
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        if (!std::isfinite(spec.psi(t))) {
            throw InvalidField("gibbs pair sampler: psi must be finite on [0,1]");
        }
    }
}

}  // namespace

RealVector sample_gibbs_pair(const GibbsPairSpec& spec, SplitMix64& rng, int burn_in, int thin) {
    if (burn_in < 1 || thin < 1) {
        throw ContractError("sample_gibbs_pair: burn_in and thin must be >= 1");
    }
    validate_gibbs_spec(spec);
    GibbsChain chain(spec, rng);
    for (int s = 0; s < burn_in + thin; ++s) {
        chain.sweep(rng);
    }
    return chain.sorted_state();
}

std::vector<RealVector> gibbs_chain(const GibbsPairSpec& spec, SplitMix64& rng, int burn_in,
                                    int thin, int count) {
    if (burn_in < 1 || thin < 1 || count < 1) {
        throw ContractError("gibbs_chain: burn_in, thin and count must be >= 1");
    }
    validate_gibbs_spec(spec);
    GibbsChain chain(spec, rng);
    for (int s = 0; s < burn_in; ++s) {
        chain.sweep(rng);
    }
    std::vector<RealVector> out;
    out.reserve(count);
    for (int c = 0; c < count; ++c) {
        for (int s = 0; s < thin; ++s) {
            chain.sweep(rng);
        }
        out.push_back(chain.sorted_state());
    }
    return out;
}

std::pair<ProjectionMatrix, ProjectionMatrix> pair_from_angles(int n, int k, int l,
                                                               const RealVector& angles,
                                                               SplitMix64& rng) {
    if (!(0 < k && k <= l && k + l <= n)) {
        throw InvalidRank("pair_from_angles requires 0 < k <= l and k + l <= N");
    }
    if (angles.size() != k) {
        throw ContractError("pair_from_angles: need exactly k angles");
    }
    // Block layout: (C^k x C^2) + C^(l-k) + C^(N-k-l) as index ranges
    // [0,k) + [k,2k) for the 2x2 blocks, [2k, k+l) identity of Q, rest zero.
    ComplexMatrix p0 = ComplexMatrix::Zero(n, n);
    ComplexMatrix q0 = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < k; ++i) {
        const double x = angles(i);
        const double s = std::sqrt(std::max(0.0, x * (1.0 - x)));
        p0(i, i) = 1.0;
        q0(i, i) = x;
        q0(i, k + i) = s;
        q0(k + i, i) = s;
        q0(k + i, k + i) = 1.0 - x;
    }
    for (int i = 2 * k; i < k + l; ++i) {
        q0(i, i) = 1.0;
    }
    const ComplexMatrix u = sample_haar_unitary(n, rng);
    ComplexMatrix p = u * p0 * u.adjoint();
    ComplexMatrix q = u * q0 * u.adjoint();
    p = (p + ComplexMatrix(p.adjoint())) / 2.0;
    q = (q + ComplexMatrix(q.adjoint())) / 2.0;
    return {ProjectionMatrix::unchecked(std::move(p), k),
            ProjectionMatrix::unchecked(std::move(q), l)};
}

MicrostateSpec::MicrostateSpec(int n_vars, std::vector<int> ranks, int dim, int max_len,
                               double eps, const std::map<Word, double>& targets)
    : n_vars_(n_vars), dim_(dim), max_len_(max_len), eps_(eps), ranks_(std::move(ranks)) {
    if (n_vars_ < 1 || static_cast<int>(ranks_.size()) != n_vars_) {
        throw ContractError("MicrostateSpec: need one rank per variable");
    }
    for (int k : ranks_) {
        if (k < 0 || k > dim_) {
            throw InvalidRank("MicrostateSpec: rank outside [0, N]");
        }
    }
    if (!(eps_ > 0.0)) {
        throw ContractError("MicrostateSpec: eps must be positive");
    }
    for (const auto& [word, target] : targets) {
        if (word.empty() || static_cast<int>(word.size()) > max_len_) {
            throw ContractError("MicrostateSpec: word length outside [1, m]");
        }
        for (int letter : word) {
            if (letter < 0 || letter >= n_vars_) {
                throw ContractError("MicrostateSpec: word letter outside variable range");
            }
        }
        if (target < 0.0 || target > 1.0) {
            throw ContractError("MicrostateSpec: target moments must lie in [0,1]");
        }
        targets_[canonical_cyclic(word)] = target;
    }
}

bool microstate_membership(const std::vector<ProjectionMatrix>& ps, const MicrostateSpec& spec) {
    if (static_cast<int>(ps.size()) != spec.n_vars()) {
        throw ContractError("microstate_membership: tuple size mismatch");
    }
    for (int i = 0; i < spec.n_vars(); ++i) {
        if (ps[i].dim() != spec.dim()) {
            throw InvalidDimension("microstate_membership: matrix dimension mismatch");
        }
        if (ps[i].rank() != spec.ranks()[i]) {
            throw InvalidRank("microstate_membership: matrix rank mismatch");
        }
    }
    const int n = spec.dim();
    for (const auto& [word, target] : spec.targets()) {
        ComplexMatrix prod = ps[word[0]].matrix();
        for (std::size_t i = 1; i < word.size(); ++i) {
            prod = prod * ps[word[i]].matrix();
        }
        const double moment = prod.trace().real() / n;
        if (!(std::abs(moment - target) < spec.eps())) {
            return false;
        }
    }
    return true;
}

MicrostateEstimate estimate_microstate_logprob(const MicrostateSpec& spec, long samples,
                                               SplitMix64& rng) {
    if (samples < 1) {
        throw ContractError("estimate_microstate_logprob: samples >= 1 required");
    }
    long accepted = 0;
    for (long s = 0; s < samples; ++s) {
        std::vector<ProjectionMatrix> tuple;
        tuple.reserve(spec.n_vars());
        for (int i = 0; i < spec.n_vars(); ++i) {
            tuple.push_back(sample_projection(spec.dim(), spec.ranks()[i], rng));
        }
        if (microstate_membership(tuple, spec)) {
            ++accepted;
        }
    }
    MicrostateEstimate est;
    est.accepted = accepted;
    est.samples = samples;
    const double n2 = static_cast<double>(spec.dim()) * spec.dim();
    est.log_prob_rate = accepted == 0
                            ? ExtReal::neg_inf()
                            : ExtReal(std::log(static_cast<double>(accepted) / samples) / n2);
    // 95% Wilson interval for the acceptance probability
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(samples);
    const double phat = static_cast<double>(accepted) / nn;
    const double denom = 1.0 + z * z / nn;
    const double center = (phat + z * z / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z * z / (4.0 * nn * nn)) / denom;
    est.wilson_low = std::max(0.0, center - half);
    est.wilson_high = std::min(1.0, center + half);
    return est;
}

}  // namespace projlab
