// projlab: batch front door for the projection-entropy laboratory.
// One invocation = one seeded experiment run with machine-readable output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "projlab/errors.hpp"
#include "projlab/experiment.hpp"

using projlab::ExperimentConfig;
using projlab::Json;

int main(int argc, char** argv) {
    CLI::App app{"projlab - projection entropy laboratory"};
    std::string command, config_path, out_path, format;
    std::string seed_str;
    int threads = 0;
    std::vector<std::string> sets;

    app.add_option("--command", command, "command name (overrides config)");
    app.add_option("--config", config_path, "path to a JSON config file");
    app.add_option("--seed", seed_str, "64-bit seed (overrides config)");
    app.add_option("--out", out_path, "artifact output path (overrides config)");
    app.add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "worker thread cap for parallel cells");
    app.add_option("--set", sets,
                   "parameter override as <json-pointer>=<json>, e.g. /N=64 "
                   "(pointer is relative to the parameters object)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    Json raw = Json::object();
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) {
            std::cerr << Json{{"schema", "projlab/1"},
                              {"error",
                               {{"type", "contract"},
                                {"message", "cannot read config: " + config_path}}}}
                             .dump(2)
                      << "\n";
            return 2;
        }
        try {
            raw = Json::parse(f);
        } catch (const std::exception& e) {
            std::cerr << Json{{"schema", "projlab/1"},
                              {"error", {{"type", "contract"}, {"message", e.what()}}}}
                             .dump(2)
                      << "\n";
            return 2;
        }
    }

    // flags win over the config file
    if (!command.empty()) raw["command"] = command;
    if (!seed_str.empty()) raw["seed"] = std::stoull(seed_str);
    if (!out_path.empty()) raw["out"] = out_path;
    if (!format.empty()) raw["format"] = format;
    if (threads > 0) raw["threads"] = threads;
    if (!raw.contains("parameters")) raw["parameters"] = Json::object();
    for (const std::string& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            std::cerr << "--set needs <pointer>=<json>\n";
            return 2;
        }
        const std::string ptr = s.substr(0, eq);
        Json value;
        try {
            value = Json::parse(s.substr(eq + 1));
        } catch (...) {
            value = s.substr(eq + 1);  // bare strings are allowed
        }
        raw["parameters"][Json::json_pointer(ptr)] = value;
    }

    ExperimentConfig cfg;
    try {
        cfg = ExperimentConfig::from_json(raw);
    } catch (const std::exception& e) {
        std::cerr << Json{{"schema", "projlab/1"},
                          {"error", {{"type", "contract"}, {"message", e.what()}}}}
                         .dump(2)
                  << "\n";
        return 2;
    }

    const projlab::RunOutcome outcome = projlab::run(cfg);
    if (outcome.exit_code == 0) {
        if (cfg.out.empty()) {
            std::cout << outcome.artifact;
        } else {
            std::cout << Json{{"schema", "projlab/1"},
                              {"out", cfg.out},
                              {"content_hash", "sha1:" + outcome.content_hash}}
                             .dump(2)
                      << "\n";
        }
    } else {
        std::cerr << outcome.envelope.dump(2) << "\n";
    }
    return outcome.exit_code;
}
