#pragma once

#include <string>
#include <vector>

#include "projlab/experiment.hpp"

namespace projlab {

/// One pinned regression value: a config to run, a JSON pointer into the
/// command result, the expected value and tolerance, and its provenance.
/// Provenance types: "exact" (directly evaluable), "literature" (asserted
/// from the reference formula/statement), "derived" (computed by a named
/// independent oracle; the oracle script must exist in the corpus).
struct GoldenRecord {
    std::string id;
    Json config;
    std::string extract;  // JSON pointer, e.g. "/chi"
    Json expected;        // number, bool or string
    double tolerance = 0.0;
    std::string provenance_type;
    std::string oracle;  // relative script path for derived records

    static GoldenRecord from_json(const Json& j);
};

struct GoldenResult {
    std::string id;
    bool passed = false;
    std::string observed;
    std::string expected;
    std::string note;
};

struct GoldenReport {
    std::vector<GoldenResult> results;
    int failures = 0;
};

/// Load all *.json records under `corpus_dir` (each file holds one record or
/// an array). Throws ContractError on corpus-integrity problems (missing
/// provenance, derived record without an existing oracle script).
std::vector<GoldenRecord> load_goldens(const std::string& corpus_dir);

/// Execute every record in-process and compare the extracted value.
GoldenReport verify_goldens(const std::vector<GoldenRecord>& corpus);

}  // namespace projlab
