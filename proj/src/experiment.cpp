#include "projlab/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>

#include "projlab/errors.hpp"

namespace projlab {

namespace {

const std::set<std::string> kCommands = {"sample",     "entropy", "pushforward",
                                         "freeness",   "microstate", "tci",
                                         "hessian",    "pressure", "equilibrium"};

// sample/microstate/hessian always draw; freeness and pressure only in
// their sampling ops
bool is_stochastic(const std::string& command, const Json& params) {
    if (command == "sample" || command == "microstate" || command == "hessian") return true;
    if (command == "freeness") return params.value("op", std::string("report")) == "report";
    if (command == "pressure") return params.value("op", std::string("mc")) == "mc";
    return false;
}

std::string fd(double v) { return format_double(v); }

void summary_row(Table& t, const std::string& key, const std::string& value) {
    t.rows.push_back({key, value});
}

Table kv_table(const Json& result) {
    Table t;
    t.header = {"key", "value"};
    for (const auto& [k, v] : result.items()) {
        if (v.is_number()) {
            summary_row(t, k, fd(v.get<double>()));
        } else if (v.is_boolean()) {
            summary_row(t, k, v.get<bool>() ? "true" : "false");
        } else if (v.is_string()) {
            summary_row(t, k, v.get<std::string>());
        } else {
            summary_row(t, k, v.dump());
        }
    }
    return t;
}

// ---- sample ----

CommandOutput cmd_sample(const ExperimentConfig& cfg) {
    const Json& p = cfg.parameters;
    const std::string op = p.value("op", std::string("pair_eigenvalues"));
    SplitMix64 rng(cfg.seed);
    CommandOutput out;
    if (op == "haar_unitary") {
        const int n = p.at("N").get<int>();
        const int samples = p.value("samples", 1);
        double sum_re = 0.0, sum_im = 0.0, sq_re = 0.0, max_resid = 0.0;
        out.table.header = {"sample", "trace_re", "trace_im"};
        for (int s = 0; s < samples; ++s) {
            const ComplexMatrix u = sample_haar_unitary(n, rng);
            const std::complex<double> tr = u.trace() / static_cast<double>(n);
            const double resid =
                max_abs(u * u.adjoint() - ComplexMatrix::Identity(n, n));
            max_resid = std::max(max_resid, resid);
            sum_re += tr.real();
            sum_im += tr.imag();
            sq_re += tr.real() * tr.real();
            out.table.rows.push_back({std::to_string(s), fd(tr.real()), fd(tr.imag())});
        }
        const double mean_re = sum_re / samples;
        const double var = samples > 1 ? (sq_re - samples * mean_re * mean_re) / (samples - 1) : 0;
        out.result["mean_trace_re"] = mean_re;
        out.result["mean_trace_im"] = sum_im / samples;
        out.result["se_trace_re"] = std::sqrt(std::max(0.0, var / samples));
        out.result["max_unitarity_residual"] = max_resid;
        return out;
    }
    if (op == "projection") {
        const int n = p.at("N").get<int>();
        const int k = p.at("k").get<int>();
        const int samples = p.value("samples", 1);
        // probe observable: (1/N) Tr(P D) with D = diag((i+1)/N)
        RealVector d(n);
        for (int i = 0; i < n; ++i) d(i) = static_cast<double>(i + 1) / n;
        double sum = 0.0, sq = 0.0;
        out.table.header = {"sample", "trace_pd"};
        for (int s = 0; s < samples; ++s) {
            const ProjectionMatrix pm = sample_projection(n, k, rng);
            double v = 0.0;
            for (int i = 0; i < n; ++i) v += pm.matrix()(i, i).real() * d(i);
            v /= n;
            sum += v;
            sq += v * v;
            out.table.rows.push_back({std::to_string(s), fd(v)});
        }
        const double mean = sum / samples;
        out.result["mean_trace_pd"] = mean;
        out.result["se"] = samples > 1
                               ? std::sqrt(std::max(0.0, (sq - samples * mean * mean) /
                                                             (samples - 1) / samples))
                               : 0.0;
        out.result["expected"] = static_cast<double>(k) / n * (d.sum() / n);
        return out;
    }
    if (op == "pair_eigenvalues" || op == "gibbs_pair") {
        const int n = p.at("N").get<int>();
        const int k = p.at("k").get<int>();
        const int l = p.at("l").get<int>();
        const int samples = p.value("samples", 1);
        out.table.header = {"sample", "index", "x"};
        double sum = 0.0;
        long count = 0;
        for (int s = 0; s < samples; ++s) {
            RealVector ev;
            if (op == "pair_eigenvalues") {
                ev = sample_pair_eigenvalues(n, k, l, rng);
            } else {
                GibbsPairSpec spec{n, k, l, parse_field(p.at("psi"))};
                ev = sample_gibbs_pair(spec, rng, p.value("burn_in", 500), p.value("thin", 5));
            }
            for (int i = 0; i < ev.size(); ++i) {
                out.table.rows.push_back({std::to_string(s), std::to_string(i), fd(ev(i))});
                sum += ev(i);
                ++count;
            }
        }
        out.result["mean"] = sum / count;
        out.result["values"] = count;
        return out;
    }
    if (op == "eigen_residual") {
        const int n = p.at("N").get<int>();
        const int trials = p.value("trials", 8);
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            const ComplexMatrix m = sample_hermitian(n, rng);
            const EigenDecomposition ed = hermitian_eigen(m);
            const ComplexMatrix recon =
                ed.vectors * ed.values.cast<std::complex<double>>().asDiagonal() *
                ed.vectors.adjoint();
            worst = std::max(worst, (recon - m).norm() / m.norm());
        }
        out.result["max_relative_residual"] = worst;
        out.table = kv_table(out.result);
        return out;
    }
    if (op == "geodesic_fd") {
        const int n = p.at("N").get<int>();
        const int k = p.at("k").get<int>();
        const double h = p.value("h", 1e-3);
        const int trials = p.value("trials", 8);
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            const ProjectionMatrix pm = sample_projection(n, k, rng);
            const TangentVector x = tangent_project(pm, sample_hermitian(n, rng));
            const ComplexMatrix diff = (grassmann_geodesic(pm, x, h).matrix() -
                                        grassmann_geodesic(pm, x, -h).matrix()) /
                                       (2.0 * h);
            const double err = (diff - x.matrix()).norm();
            const double norm = x.matrix().norm();
            worst = std::max(worst, err / (norm * norm * norm));
        }
        out.result["max_fd_error_over_norm3"] = worst;
        out.result["bound"] = 10.0 * h * h;
        out.table = kv_table(out.result);
        return out;
    }
    if (op == "canonical_roundtrip") {
        // draw a pair, extract its canonical state, and compare every word
        // moment of length <= m against the direct matrix trace
        const int n = p.at("N").get<int>();
        const int k = p.at("k").get<int>();
        const int l = p.at("l").get<int>();
        const int m = p.value("m", 4);
        const ProjectionMatrix pm = sample_projection(n, k, rng);
        const ProjectionMatrix qm = sample_projection(n, l, rng);
        const PairState state = canonical_form(pm, qm);
        double worst = 0.0;
        std::vector<std::string> words{"e", "f"};
        for (int len = 1; len < m; ++len) {
            std::vector<std::string> next;
            for (const auto& w : words) {
                if (static_cast<int>(w.size()) == len) {
                    next.push_back(w + "e");
                    next.push_back(w + "f");
                }
            }
            words.insert(words.end(), next.begin(), next.end());
        }
        for (const auto& w : words) {
            ComplexMatrix prod = ComplexMatrix::Identity(n, n);
            for (char c : w) prod = prod * (c == 'e' ? pm.matrix() : qm.matrix());
            worst = std::max(worst,
                             std::abs(pair_moment(state, w) - prod.trace().real() / n));
        }
        out.result["max_word_gap"] = worst;
        out.result["words"] = words.size();
        out.table = kv_table(out.result);
        return out;
    }
    if (op == "tangent_projection") {
        const int n = p.at("N").get<int>();
        const int k = p.at("k").get<int>();
        const int trials = p.value("trials", 8);
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            const ProjectionMatrix pm = sample_projection(n, k, rng);
            const ComplexMatrix h = sample_hermitian(n, rng);
            const TangentVector x = tangent_project(pm, h);
            const std::complex<double> ip =
                (x.matrix().adjoint() * (h - x.matrix())).trace();
            worst = std::max(worst, std::abs(ip));
        }
        out.result["max_inner_product"] = worst;
        out.table = kv_table(out.result);
        return out;
    }
    throw ContractError("sample: unknown op " + op);
}

// ---- entropy ----

CommandOutput cmd_entropy(const ExperimentConfig& cfg) {
    const Json& p = cfg.parameters;
    const std::string op = p.value("op", std::string("chi"));
    CommandOutput out;
    if (op == "chi") {
        const EntropyReport r = chi_proj_pair(parse_state(p.at("state")));
        out.result = entropy_report_to_json(r);
        out.table = kv_table(out.result);
        return out;
    }
    if (op == "log_energy") {
        const ExtReal v = log_energy(parse_measure(p.at("measure")));
        out.result["finite"] = v.is_finite();
        if (v.is_finite()) out.result["value"] = v.value();
        out.table = kv_table(out.result);
        return out;
    }
    if (op == "b") {
        out.result["value"] = b_function(p.at("s").get<double>(), p.at("t").get<double>());
        out.table = kv_table(out.result);
        return out;
    }
    if (op == "c") {
        out.result["value"] =
            c_constant(p.at("alpha").get<double>(), p.at("beta").get<double>());
        out.table = kv_table(out.result);
        return out;
    }
    if (op == "moment") {
        const PairState s = parse_state(p.at("state"));
        std::string word = p.at("word").get<std::string>();
        for (char& c : word) {
            if (c == '0') c = 'e';
            if (c == '1') c = 'f';
        }
        out.result["value"] = pair_moment(s, word);
        out.table = kv_table(out.result);
        return out;
    }
    throw ContractError("entropy: unknown op " + op);
}

// ---- pushforward ----

CommandOutput cmd_pushforward(const ExperimentConfig& cfg) {
    const Json& p = cfg.parameters;
    const std::string op = p.value("op", std::string("state"));
    const PairState base = parse_state(p.at("state"));
    const FunctionOnUnitInterval psi = parse_field(p.at("psi"));
    CommandOutput out;
    if (op == "state") {
        const PairState pushed = pushforward_state(base, psi);
        out.result = state_to_json(pushed);
        out.result["beta_preserved"] = std::abs(pushed.beta() - base.beta()) < 1e-12;
        out.table.header = {"x", "w"};
        for (std::size_t i = 0; i < pushed.nu().size(); ++i) {
            out.table.rows.push_back(
                {fd(pushed.nu().support()[i]), fd(pushed.nu().weights()[i])});
        }
        return out;
    }
    if (op == "delta") {
        const double delta = change_of_variable_delta(base, psi);
        const EntropyReport before = chi_proj_pair(base);
        const EntropyReport after = chi_proj_pair(pushforward_state(base, psi));
        out.result["delta"] = delta;
        out.result["chi_base_finite"] = before.chi.is_finite();
        if (before.chi.is_finite()) out.result["chi_base"] = before.chi.value();
        out.result["chi_pushed_finite"] = after.chi.is_finite();
        if (after.chi.is_finite()) out.result["chi_pushed"] = after.chi.value();
        if (before.chi.is_finite() && after.chi.is_finite()) {
            out.result["consistency_gap"] =
                std::abs(after.chi.value() - (before.chi.value() + delta));
        }
        out.table = kv_table(out.result);
        return out;
    }
    throw ContractError("pushforward: unknown op " + op);
}

// ---- freeness ----

CommandOutput cmd_freeness(const ExperimentConfig& cfg) {
    const Json& p = cfg.parameters;
    const std::string op = p.value("op", std::string("report"));
    const BlockFamily family = parse_family(p.at("family"));
    CommandOutput out;
    if (op == "moment") {
        out.result["value"] = free_mixed_moment(family, parse_word(p.at("word").get<std::string>()));
        out.table = kv_table(out.result);
        return out;
    }
    if (op == "report") {
        std::vector<Word> words;
        for (const auto& w : p.at("words")) words.push_back(parse_word(w.get<std::string>()));
        std::vector<int> ns;
        for (const auto& n : p.at("N_list")) ns.push_back(n.get<int>());
        SplitMix64 rng(cfg.seed);
        const auto cells = asymptotic_freeness_report(family, words, ns, p.at("samples").get<int>(),
                                                      rng, cfg.threads);
        out.table.header = {"word", "N", "samples", "mean_abs_error", "std_error"};
        Json rows = Json::array();
        for (const auto& c : cells) {
            Json r;
            r["word"] = word_to_string(c.word);
            r["N"] = c.n;
            r["samples"] = c.samples;
            r["available"] = c.available;
            if (c.available) {
                r["mean_abs_error"] = c.mean_abs_error;
                r["std_error"] = c.std_error;
                r["decreasing"] = c.decreasing;
            } else {
                r["note"] = c.note;
            }
            rows.push_back(std::move(r));
            out.table.rows.push_back({word_to_string(c.word), std::to_string(c.n),
                                      std::to_string(c.samples),
                                      c.available ? fd(c.mean_abs_error) : "",
                                      c.available ? fd(c.std_error) : ""});
        }
        out.result["cells"] = std::move(rows);
        return out;
    }
    if (op == "gap") {
        std::map<Word, double> joint;
        if (p.contains("joint")) {
            for (const auto& [k, v] : p.at("joint").items()) {
                joint[parse_word(k)] = v.get<double>();
            }
        } else if (p.value("joint_from", std::string()) == "free") {
            for (const Word& w : alternating_words(family, 4)) {
                joint[w] = free_mixed_moment(family, w);
            }
        } else {
            throw ContractError("freeness gap: supply joint moments or joint_from=free");
        }
        const AdditivityReport rep = additivity_gap(family, joint);
        out.result["bound_finite"] = rep.additive_bound.is_finite();
        if (rep.additive_bound.is_finite()) out.result["additive_bound"] = rep.additive_bound.value();
        out.result["deviation_score"] = rep.deviation_score;
        out.result["words_scored"] = rep.words_scored;
        out.table = kv_table(out.result);
        return out;
    }
    throw ContractError("freeness: unknown op " + op);
}

// ---- microstate ----

MicrostateSpec parse_microstate_spec(const Json& p) {
    const int n_vars = p.at("n").get<int>();
    std::vector<int> ranks;
    for (const auto& r : p.at("ranks")) ranks.push_back(r.get<int>());
    const int dim = p.at("N").get<int>();
    const int m = p.at("m").get<int>();
    const double eps = p.at("eps").get<double>();
    std::map<Word, double> targets;
    if (p.contains("targets")) {
        for (const auto& [k, v] : p.at("targets").items()) {
            targets[parse_word(k)] = v.get<double>();
        }
    } else if (p.value("targets_from", std::string()) == "free") {
        std::vector<BlockFamily::Block> blocks;
        for (int i = 0; i < n_vars; ++i) {
            blocks.push_back(SingleBlock{static_cast<double>(ranks[i]) / dim});
        }
        targets = free_targets(BlockFamily(std::move(blocks)), m);
    } else {
        throw ContractError("microstate: supply targets or targets_from=free");
    }
    return MicrostateSpec(n_vars, std::move(ranks), dim, m, eps, targets);
}

CommandOutput cmd_microstate(const ExperimentConfig& cfg) {
    const Json& p = cfg.parameters;
    const std::string op = p.value("op", std::string("logprob"));
    const MicrostateSpec spec = parse_microstate_spec(p);
    SplitMix64 rng(cfg.seed);
    CommandOutput out;
    const long samples = p.value("samples", 200);
    const MicrostateEstimate est = estimate_microstate_logprob(spec, samples, rng);
    out.result["accepted"] = est.accepted;
    out.result["samples"] = est.samples;
    out.result["acceptance_rate"] = static_cast<double>(est.accepted) / est.samples;
    out.result["wilson_low"] = est.wilson_low;
    out.result["wilson_high"] = est.wilson_high;
    out.result["finite"] = est.log_prob_rate.is_finite();
    if (est.log_prob_rate.is_finite()) out.result["log_prob_rate"] = est.log_prob_rate.value();
    if (op != "logprob" && op != "membership") {
        throw ContractError("microstate: unknown op " + op);
    }
    out.table = kv_table(out.result);
    return out;
}

// ---- tci ----

CommandOutput cmd_tci(const ExperimentConfig& cfg) {
    const Json& p = cfg.parameters;
    const std::string op = p.value("op", std::string("check"));
    CommandOutput out;
    if (op == "check") {
        const TransportReport r =
            surrogate_tci_check(parse_state(p.at("state")), p.value("grid", 2000));
        out.result = transport_report_to_json(r);
        out.table = kv_table(out.result);
        return out;
    }
    if (op == "w2") {
        out.result["value"] =
            wasserstein2_interval(parse_measure(p.at("mu1")), parse_measure(p.at("mu2")));
        out.table = kv_table(out.result);
        return out;
    }
    throw ContractError("tci: unknown op " + op);
}

// ---- hessian ----

CommandOutput cmd_hessian(const ExperimentConfig& cfg) {
    const Json& p = cfg.parameters;
    SplitMix64 rng(cfg.seed);
    const FunctionOnUnitInterval psi = parse_field(p.at("psi"));
    const auto rep = hessian_bound_check(p.at("N").get<int>(), p.at("k").get<int>(),
                                         p.at("l").get<int>(), psi,
                                         p.value("trials", 100), rng, cfg.threads);
    CommandOutput out;
    out.result["worst_ratio"] = rep.worst_ratio;
    out.result["trials"] = rep.trials.size();
    out.table.header = {"trial", "second_derivative", "denominator", "ratio"};
    for (std::size_t i = 0; i < rep.trials.size(); ++i) {
        const auto& t = rep.trials[i];
        out.table.rows.push_back(
            {std::to_string(i), fd(t.second_derivative), fd(t.denominator), fd(t.ratio)});
    }
    return out;
}

// ---- pressure ----

CommandOutput cmd_pressure(const ExperimentConfig& cfg) {
    const Json& p = cfg.parameters;
    const std::string op = p.value("op", std::string("mc"));
    CommandOutput out;
    if (op == "single") {
        out.result["value"] = pressure_single(p.at("alpha").get<double>(),
                                              p.at("h1").get<double>(), p.at("h2").get<double>());
        out.table = kv_table(out.result);
        return out;
    }
    if (op == "mc") {
        const int n = p.at("N").get<int>();
        const int k = p.at("k").get<int>();
        const int l = p.at("l").get<int>();
        const PressureHamiltonian h = parse_hamiltonian(p.at("h"));
        PressureMethod method = PressureMethod::Auto;
        const std::string ms = p.value("method", std::string("auto"));
        if (ms == "direct") {
            method = PressureMethod::Direct;
        } else if (ms == "tilted") {
            method = PressureMethod::TiltedChain;
        } else if (ms != "auto") {
            throw ContractError("pressure mc: unknown method " + ms);
        }
        SplitMix64 rng(cfg.seed);
        const McPressureResult r = mc_pressure(n, k, l, h, p.value("samples", 1000), rng, method);
        out.result["alpha"] = static_cast<double>(k) / n;
        out.result["beta"] = static_cast<double>(l) / n;
        out.result["A"] = h.a;
        out.result["B"] = h.b;
        out.result["psi_id"] = p.contains("h") && p.at("h").contains("psi")
                                   ? field_id(p.at("h").at("psi"))
                                   : "zero";
        out.result["N"] = n;
        out.result["estimate"] = r.estimate;
        out.result["std_error"] = r.std_error;
        out.result["method"] =
            r.method_used == PressureMethod::Direct ? "direct" : "tilted";
        out.table = kv_table(out.result);
        return out;
    }
    if (op == "eta") {
        const PairState state = parse_state(p.at("state"));
        std::vector<PressureHamiltonian> family;
        if (p.contains("family")) {
            for (const auto& h : p.at("family")) family.push_back(parse_hamiltonian(h));
        }
        if (p.value("include_conjugate", false)) {
            family.push_back(conjugate_field(state));
        }
        const double bound = eta_pair_bound(state, family, p.value("grid", 1500));
        out.result["eta_bound"] = bound;
        const EntropyReport er = chi_proj_pair(state);
        out.result["chi_finite"] = er.chi.is_finite();
        if (er.chi.is_finite()) {
            out.result["chi"] = er.chi.value();
            out.result["gap"] = bound - er.chi.value();
        }
        out.table = kv_table(out.result);
        return out;
    }
    if (op == "sweep") {
        out.result["value"] = pressure_over_traces(parse_hamiltonian(p.at("h")),
                                                   p.value("alpha_steps", 5),
                                                   p.value("grid", 800));
        out.table = kv_table(out.result);
        return out;
    }
    throw ContractError("pressure: unknown op " + op);
}

// ---- equilibrium ----

CommandOutput cmd_equilibrium(const ExperimentConfig& cfg) {
    const Json& p = cfg.parameters;
    const EquilibriumSolution sol = equilibrium_pressure(
        p.at("alpha").get<double>(), p.at("beta").get<double>(),
        parse_hamiltonian(p.at("h")), p.value("grid", 2000), p.value("max_iterations", 5000),
        p.value("kkt_tol", 1e-4));
    CommandOutput out;
    out.result["value"] = sol.value;
    out.result["kkt_residual"] = sol.kkt_residual;
    out.result["iterations"] = sol.iterations;
    out.result["mass"] = sol.nu_star.total_mass();
    out.result["objective"] = sol.objective;
    out.table.header = {"x", "w"};
    for (std::size_t i = 0; i < sol.nu_star.size(); ++i) {
        out.table.rows.push_back(
            {fd(sol.nu_star.support()[i]), fd(sol.nu_star.weights()[i])});
    }
    return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
    ExperimentConfig cfg;
    if (!j.contains("command")) {
        throw ContractError("config: missing command");
    }
    cfg.command = j.at("command").get<std::string>();
    if (!kCommands.count(cfg.command)) {
        throw ContractError("config: unknown command " + cfg.command);
    }
    cfg.parameters = j.value("parameters", Json::object());
    if (j.contains("seed")) {
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.seed_set = true;
    }
    cfg.out = j.value("out", std::string());
    cfg.format = j.value("format", std::string("json"));
    if (cfg.format != "json" && cfg.format != "csv") {
        throw ContractError("config: format must be json or csv");
    }
    cfg.threads = j.value("threads", 1);
    if (cfg.threads < 1) {
        throw ContractError("config: threads must be >= 1");
    }
    if (is_stochastic(cfg.command, cfg.parameters) && !cfg.seed_set) {
        throw ContractError("config: stochastic command requires a seed");
    }
    return cfg;
}

Json ExperimentConfig::to_json() const {
    Json j;
    j["schema"] = "projlab/1";
    j["command"] = command;
    j["parameters"] = parameters;
    if (seed_set) j["seed"] = seed;
    j["out"] = out;
    j["format"] = format;
    j["threads"] = threads;
    return j;
}

CommandOutput execute_command(const ExperimentConfig& config) {
    if (config.command == "sample") return cmd_sample(config);
    if (config.command == "entropy") return cmd_entropy(config);
    if (config.command == "pushforward") return cmd_pushforward(config);
    if (config.command == "freeness") return cmd_freeness(config);
    if (config.command == "microstate") return cmd_microstate(config);
    if (config.command == "tci") return cmd_tci(config);
    if (config.command == "hessian") return cmd_hessian(config);
    if (config.command == "pressure") return cmd_pressure(config);
    if (config.command == "equilibrium") return cmd_equilibrium(config);
    throw ContractError("unknown command: " + config.command);
}

RunOutcome run(const ExperimentConfig& config) {
    RunOutcome outcome;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const CommandOutput out = execute_command(config);
        Json envelope;
        envelope["schema"] = "projlab/1";
        envelope["command"] = config.command;
        envelope["result"] = out.result;
        outcome.envelope = envelope;
        outcome.artifact = config.format == "json" ? envelope.dump(2) + "\n"
                                                   : render_csv(out.table);
        outcome.content_hash = git_blob_sha1(outcome.artifact);
        outcome.exit_code = 0;
    } catch (const GuardError& e) {
        outcome.exit_code = 3;
        outcome.envelope = Json{{"schema", "projlab/1"},
                                {"error", {{"type", "guard"}, {"message", e.what()}}}};
    } catch (const ContractError& e) {
        outcome.exit_code = 2;
        outcome.envelope = Json{{"schema", "projlab/1"},
                                {"error", {{"type", "contract"}, {"message", e.what()}}}};
    } catch (const std::exception& e) {
        outcome.exit_code = 1;
        outcome.envelope = Json{{"schema", "projlab/1"},
                                {"error", {{"type", "runtime"}, {"message", e.what()}}}};
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!config.out.empty() && outcome.exit_code == 0) {
        std::ofstream f(config.out, std::ios::binary);
        if (!f) {
            outcome.exit_code = 1;
            outcome.envelope = Json{{"schema", "projlab/1"},
                                    {"error",
                                     {{"type", "io"}, {"message", "cannot open " + config.out}}}};
            return outcome;
        }
        f << outcome.artifact;
        f.close();
        Json manifest;
        manifest["schema"] = "projlab/1";
        manifest["config"] = config.to_json();
        manifest["content_hash"] = "sha1:" + outcome.content_hash;
        manifest["wall_time_s"] = wall;
        std::ofstream mf(config.out + ".manifest.json", std::ios::binary);
        mf << manifest.dump(2) << "\n";
    }
    return outcome;
}

}  // namespace projlab
