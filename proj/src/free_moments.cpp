#include "projlab/free_moments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <thread>
#include <unordered_map>

#include "projlab/errors.hpp"

namespace projlab {

BlockFamily::BlockFamily(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    for (int b = 0; b < static_cast<int>(blocks_.size()); ++b) {
        if (std::holds_alternative<PairBlock>(blocks_[b])) {
            gens_.push_back({b, 'e'});
            gens_.push_back({b, 'f'});
        } else {
            const double a = std::get<SingleBlock>(blocks_[b]).alpha;
            if (a < 0.0 || a > 1.0) {
                throw ContractError("SingleBlock trace must lie in [0,1]");
            }
            gens_.push_back({b, 'e'});
        }
    }
    gen_count_ = static_cast<int>(gens_.size());
}

BlockFamily::GenRef BlockFamily::resolve(int generator) const {
    if (generator < 0 || generator >= gen_count_) {
        throw ContractError("unknown generator index");
    }
    return gens_[generator];
}

namespace {

// Element of one block's unital *-algebra: a real combination of reduced
// within-block monomials plus a scalar. Monomials are alternating strings
// over {e, f} (letters are idempotent, so concatenation collapses repeats).
struct Token {
    int block;
    std::map<std::string, double> poly;
    double scalar = 0.0;
    bool centered = false;
};

std::string mono_mul(const std::string& a, const std::string& b) {
    std::string out = a;
    for (char c : b) {
        if (!out.empty() && out.back() == c) continue;
        out.push_back(c);
    }
    return out;
}

Token token_mul(const Token& a, const Token& b) {
    Token out{a.block, {}, a.scalar * b.scalar, false};
    for (const auto& [ma, ca] : a.poly) {
        for (const auto& [mb, cb] : b.poly) {
            out.poly[mono_mul(ma, mb)] += ca * cb;
        }
        if (b.scalar != 0.0) out.poly[ma] += ca * b.scalar;
    }
    if (a.scalar != 0.0) {
        for (const auto& [mb, cb] : b.poly) {
            out.poly[mb] += a.scalar * cb;
        }
    }
    return out;
}

struct Evaluator {
    const BlockFamily& family;
    std::unordered_map<std::string, double> memo;

    double block_trace(const Token& t) const {
        double v = t.scalar;
        const auto& blk = family.blocks()[t.block];
        for (const auto& [mono, coeff] : t.poly) {
            if (coeff == 0.0) continue;
            if (std::holds_alternative<PairBlock>(blk)) {
                v += coeff * pair_moment(std::get<PairBlock>(blk).state, mono);
            } else {
                // any reduced monomial in a single projection is the
                // projection itself
                v += coeff * std::get<SingleBlock>(blk).alpha;
            }
        }
        return v;
    }

    static std::string key_of(const std::vector<Token>& tokens) {
        std::string key;
        char buf[40];
        for (const auto& t : tokens) {
            key += std::to_string(t.block);
            key += t.centered ? 'c' : 'u';
            for (const auto& [m, c] : t.poly) {
                std::snprintf(buf, sizeof buf, "%.17g", c);
                key += m;
                key += ':';
                key += buf;
                key += ',';
            }
            std::snprintf(buf, sizeof buf, "%.17g", t.scalar);
            key += 's';
            key += buf;
            key += '|';
        }
        return key;
    }

    // merge adjacent tokens of the same block
    static std::vector<Token> merge_adjacent(std::vector<Token> tokens) {
        std::vector<Token> out;
        for (auto& t : tokens) {
            if (!out.empty() && out.back().block == t.block) {
                out.back() = token_mul(out.back(), t);
            } else {
                out.push_back(std::move(t));
            }
        }
        return out;
    }

    double evaluate(std::vector<Token> tokens) {
        tokens = merge_adjacent(std::move(tokens));
        if (tokens.empty()) return 1.0;
        if (tokens.size() == 1) return block_trace(tokens[0]);
        const std::string key = key_of(tokens);
        if (auto it = memo.find(key); it != memo.end()) return it->second;

        double result;
        std::size_t i = 0;
        while (i < tokens.size() && tokens[i].centered) ++i;
        if (i == tokens.size()) {
            // alternating word of trace-zero elements of free blocks
            result = 0.0;
        } else {
            const double t = block_trace(tokens[i]);
            std::vector<Token> centered_branch = tokens;
            centered_branch[i].scalar -= t;
            centered_branch[i].centered = true;
            double a = evaluate(std::move(centered_branch));
            double b = 0.0;
            if (t != 0.0) {
                std::vector<Token> removed;
                removed.reserve(tokens.size() - 1);
                for (std::size_t j = 0; j < tokens.size(); ++j) {
                    if (j != i) removed.push_back(tokens[j]);
                }
                b = t * evaluate(std::move(removed));
            }
            result = a + b;
        }
        memo.emplace(key, result);
        return result;
    }
};

}  // namespace

double free_mixed_moment(const BlockFamily& family, const Word& word) {
    if (word.empty()) {
        throw ContractError("free_mixed_moment: word must be nonempty");
    }
    std::vector<Token> tokens;
    tokens.reserve(word.size());
    for (int g : word) {
        const BlockFamily::GenRef ref = family.resolve(g);
        Token t{ref.block, {}, 0.0, false};
        t.poly[std::string(1, ref.letter)] = 1.0;
        tokens.push_back(std::move(t));
    }
    Evaluator ev{family, {}};
    return ev.evaluate(std::move(tokens));
}

std::map<Word, double> free_targets(const BlockFamily& family, int max_len) {
    std::map<Word, double> out;
    const int g = family.generator_count();
    std::set<Word> canon;
    std::vector<Word> frontier{{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (int letter = 0; letter < g; ++letter) {
                Word e = w;
                e.push_back(letter);
                next.push_back(e);
                canon.insert(canonical_cyclic(e));
            }
        }
        frontier = std::move(next);
    }
    for (const Word& w : canon) {
        out[w] = free_mixed_moment(family, w);
    }
    return out;
}

namespace {

struct BlockMatrices {
    std::vector<ComplexMatrix> per_generator;  // one matrix per generator
};

// Draw matrices for every block at size n; returns false (with a note) when
// a block's sampler cannot realize this n.
bool draw_tuple(const BlockFamily& family, int n, SplitMix64& rng, BlockMatrices& out,
                std::string& note) {
    out.per_generator.clear();
    for (const auto& blk : family.blocks()) {
        if (std::holds_alternative<SingleBlock>(blk)) {
            const double a = std::get<SingleBlock>(blk).alpha;
            const int k = static_cast<int>(std::lround(a * n));
            out.per_generator.push_back(sample_projection(n, k, rng).matrix());
            continue;
        }
        const PairBlock& pb = std::get<PairBlock>(blk);
        const int k = static_cast<int>(std::lround(pb.state.alpha() * n));
        const int l = static_cast<int>(std::lround(pb.state.beta() * n));
        switch (pb.sampler) {
            case PairSamplerKind::HaarIndependent: {
                out.per_generator.push_back(sample_projection(n, k, rng).matrix());
                out.per_generator.push_back(sample_projection(n, l, rng).matrix());
                break;
            }
            case PairSamplerKind::Gibbs: {
                if (!(0 < k && k <= l && k + l <= n)) {
                    note = "gibbs sampler infeasible at this rank profile";
                    return false;
                }
                GibbsPairSpec spec{n, k, l, *pb.psi};
                const RealVector angles = sample_gibbs_pair(spec, rng, 200, 5);
                auto [p, q] = pair_from_angles(n, k, l, angles, rng);
                out.per_generator.push_back(p.matrix());
                out.per_generator.push_back(q.matrix());
                break;
            }
            case PairSamplerKind::Fixed: {
                if (!pb.fixed || pb.fixed->first.dim() != n) {
                    note = "fixed pair has a different matrix size";
                    return false;
                }
                out.per_generator.push_back(pb.fixed->first.matrix());
                out.per_generator.push_back(pb.fixed->second.matrix());
                break;
            }
            case PairSamplerKind::None:
                note = "no matrix sampler declared for a pair block";
                return false;
        }
    }
    return true;
}

}  // namespace

std::vector<FreenessCell> asymptotic_freeness_report(const BlockFamily& family,
                                                     const std::vector<Word>& words,
                                                     const std::vector<int>& n_list, int samples,
                                                     SplitMix64& rng, int threads) {
    if (samples < 1) {
        throw ContractError("asymptotic_freeness_report: samples >= 1 required");
    }
    std::vector<FreenessCell> cells(words.size() * n_list.size());
    auto run_cell = [&](std::size_t wi, std::size_t ni) {
        FreenessCell& cell = cells[wi * n_list.size() + ni];
        cell.word = words[wi];
        cell.n = n_list[ni];
        cell.samples = samples;
        cell.target = free_mixed_moment(family, words[wi]);
        SplitMix64 local = rng.child(wi * 1000003ULL + ni);
        BlockMatrices mats;
        std::string note;
        double sum = 0.0, sumsq = 0.0;
        for (int s = 0; s < samples; ++s) {
            if (!draw_tuple(family, cell.n, local, mats, note)) {
                cell.available = false;
                cell.note = note;
                return;
            }
            ComplexMatrix prod = mats.per_generator[words[wi][0]];
            for (std::size_t i = 1; i < words[wi].size(); ++i) {
                prod = prod * mats.per_generator[words[wi][i]];
            }
            const double emp = prod.trace().real() / cell.n;
            const double err = std::abs(emp - cell.target);
            sum += err;
            sumsq += err * err;
        }
        cell.available = true;
        cell.mean_abs_error = sum / samples;
        const double var = std::max(0.0, (sumsq - sum * sum / samples) / std::max(1, samples - 1));
        cell.std_error = std::sqrt(var / samples);
    };

    std::vector<std::pair<std::size_t, std::size_t>> jobs;
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
        for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
            jobs.emplace_back(wi, ni);
        }
    }
    const int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
    if (nthreads == 1) {
        for (auto [wi, ni] : jobs) run_cell(wi, ni);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1)) {
                    run_cell(jobs[j].first, jobs[j].second);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // per-word monotone-trend flag over ascending N
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
            FreenessCell& cell = cells[wi * n_list.size() + ni];
            if (!cell.available) continue;
            cell.decreasing = cell.mean_abs_error <= prev;
            prev = cell.mean_abs_error;
        }
    }
    return cells;
}

std::vector<Word> alternating_words(const BlockFamily& family, int max_len) {
    std::set<Word> canon;
    const int g = family.generator_count();
    std::vector<Word> frontier{{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (int letter = 0; letter < g; ++letter) {
                if (!w.empty() &&
                    family.resolve(w.back()).block == family.resolve(letter).block) {
                    continue;
                }
                Word e = w;
                e.push_back(letter);
                next.push_back(e);
                canon.insert(canonical_cyclic(e));
            }
        }
        frontier = std::move(next);
    }
    return {canon.begin(), canon.end()};
}

AdditivityReport additivity_gap(const BlockFamily& family, const std::map<Word, double>& joint) {
    AdditivityReport rep;
    rep.additive_bound = ExtReal(0.0);
    for (const auto& blk : family.blocks()) {
        if (std::holds_alternative<PairBlock>(blk)) {
            rep.additive_bound += chi_proj_pair(std::get<PairBlock>(blk).state).chi;
        }
        // single-projection blocks have zero entropy
    }
    for (const auto& [word, value] : joint) {
        if (word.empty() || word.size() > 4) continue;
        bool alternating = true;
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            if (family.resolve(word[i]).block == family.resolve(word[i + 1]).block) {
                alternating = false;
                break;
            }
        }
        if (!alternating) continue;
        rep.deviation_score += std::abs(value - free_mixed_moment(family, word));
        ++rep.words_scored;
    }
    return rep;
}

}  // namespace projlab
