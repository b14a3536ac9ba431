#pragma once

#include <cstdint>
#include <string>

#include "projlab/serial.hpp"

namespace projlab {

/// One batch run: a command, its parameter map, a seed and an output sink.
/// Identical configs produce byte-identical artifacts.
struct ExperimentConfig {
    std::string command;
    Json parameters = Json::object();
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out;                 // artifact path; empty = stdout only
    std::string format = "json";     // "json" | "csv"
    int threads = 1;

    static ExperimentConfig from_json(const Json& j);
    Json to_json() const;
};

/// In-memory result of executing a command (before rendering).
struct CommandOutput {
    Json result;  // JSON body (without the envelope)
    Table table;  // tabular rendering for CSV
};

/// Dispatch a command; throws on any contract violation.
CommandOutput execute_command(const ExperimentConfig& config);

struct RunOutcome {
    int exit_code = 0;
    Json envelope;            // {"schema","command","result"} or error record
    std::string artifact;     // exact bytes written to `out`
    std::string content_hash; // sha1 of the artifact
};

/// Execute and render: writes the artifact to config.out (when set) plus a
/// sidecar manifest `<out>.manifest.json` with the config echo, content hash
/// and wall time. Exit codes: 0 ok, 2 config/schema violation, 3 numeric
/// guard, 1 other failures; error records are returned in the envelope.
RunOutcome run(const ExperimentConfig& config);

}  // namespace projlab
