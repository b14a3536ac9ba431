#pragma once

#include <optional>
#include <variant>

#include "projlab/entropy.hpp"
#include "projlab/grassmann.hpp"
#include "projlab/pair_state.hpp"

namespace projlab {

/// One free block contributing a single projection generator of trace alpha.
struct SingleBlock {
    double alpha = 0.5;
};

/// How a pair block is realized at matrix level in the freeness harness.
enum class PairSamplerKind {
    None,             // no matrix model; report rows are marked unavailable
    HaarIndependent,  // independent invariant projections (the chi = 0 pair)
    Gibbs,            // angle law reweighted by exp(-N Tr psi(PQP))
    Fixed,            // a deterministic pair, replicated
};

/// One free block contributing two generators (p_i, q_i) with joint law
/// given by a PairState.
struct PairBlock {
    PairState state;
    PairSamplerKind sampler = PairSamplerKind::None;
    std::optional<FunctionOnUnitInterval> psi;  // Gibbs field
    std::optional<std::pair<ProjectionMatrix, ProjectionMatrix>> fixed;
};

/// Ordered free product of pair blocks and single-projection blocks.
/// Generators are numbered left to right: a pair block contributes two
/// consecutive generators, a single block one.
class BlockFamily {
public:
    using Block = std::variant<PairBlock, SingleBlock>;

    explicit BlockFamily(std::vector<Block> blocks);

    const std::vector<Block>& blocks() const { return blocks_; }
    int generator_count() const { return gen_count_; }

    struct GenRef {
        int block;   // block index
        char letter; // 'e'/'f' within a pair block, 'e' for a single block
    };
    GenRef resolve(int generator) const;

private:
    std::vector<Block> blocks_;
    std::vector<GenRef> gens_;
    int gen_count_ = 0;
};

/// Mixed moment of the word in the free-product trace of the family.
/// Within-block products reduce through pair_moment; across blocks the
/// moment is obtained by centering letters and killing alternating centered
/// words. Deterministic, exact up to rounding.
double free_mixed_moment(const BlockFamily& family, const Word& word);

/// All cyclically-canonical words of length in [1, max_len] over the
/// family's generators, with their free moments (targets for microstates).
std::map<Word, double> free_targets(const BlockFamily& family, int max_len);

struct FreenessCell {
    Word word;
    int n = 0;            // matrix size
    int samples = 0;
    double target = 0.0;  // free prediction
    double mean_abs_error = 0.0;
    double std_error = 0.0;
    bool available = false;
    bool decreasing = false;  // mean error not above the previous N for this word
    std::string note;
};

/// Finite-N check of asymptotic freeness: for each (word, N), the mean and
/// standard error of |empirical word moment - free moment| over independent
/// tuples drawn per block. Rows whose block samplers cannot realize the
/// requested N are reported as unavailable rather than raised.
std::vector<FreenessCell> asymptotic_freeness_report(const BlockFamily& family,
                                                     const std::vector<Word>& words,
                                                     const std::vector<int>& n_list, int samples,
                                                     SplitMix64& rng, int threads = 1);

struct AdditivityReport {
    ExtReal additive_bound;      // sum of per-block chi values
    double deviation_score = 0;  // sum |joint - free| over alternating words, len <= 4
    int words_scored = 0;
};

/// Upper bound for the joint entropy by block additivity, plus a freeness
/// deviation score of externally supplied joint moments. A near-zero score
/// certifies the regime where the additive bound is attained.
AdditivityReport additivity_gap(const BlockFamily& family, const std::map<Word, double>& joint);

/// Alternating words (adjacent letters in different blocks) up to max_len,
/// cyclically canonical; the word list additivity_gap scores against.
std::vector<Word> alternating_words(const BlockFamily& family, int max_len);

}  // namespace projlab
