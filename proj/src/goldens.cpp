#include "projlab/goldens.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "projlab/errors.hpp"

namespace projlab {

namespace fs = std::filesystem;

GoldenRecord GoldenRecord::from_json(const Json& j) {
    GoldenRecord r;
    r.id = j.at("id").get<std::string>();
    r.config = j.at("config");
    r.extract = j.at("extract").get<std::string>();
    r.expected = j.at("expected");
    r.tolerance = j.value("tolerance", 0.0);
    if (!j.contains("provenance") || !j.at("provenance").contains("type")) {
        throw ContractError("golden " + r.id + ": provenance tag is mandatory");
    }
    r.provenance_type = j.at("provenance").at("type").get<std::string>();
    if (r.provenance_type != "exact" && r.provenance_type != "literature" &&
        r.provenance_type != "derived") {
        throw ContractError("golden " + r.id + ": unknown provenance type " + r.provenance_type);
    }
    r.oracle = j.at("provenance").value("oracle", std::string());
    if (r.provenance_type == "derived" && r.oracle.empty()) {
        throw ContractError("golden " + r.id + ": derived records must name their oracle");
    }
    return r;
}

std::vector<GoldenRecord> load_goldens(const std::string& corpus_dir) {
    std::vector<GoldenRecord> out;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(corpus_dir)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw ContractError("golden corpus is empty: " + corpus_dir);
    }
    for (const auto& path : files) {
        std::ifstream f(path);
        Json j = Json::parse(f);
        const auto add = [&](const Json& rec) { out.push_back(GoldenRecord::from_json(rec)); };
        if (j.is_array()) {
            for (const auto& rec : j) add(rec);
        } else {
            add(j);
        }
    }
    // derived oracles must be committed next to the corpus
    const fs::path root = fs::path(corpus_dir).parent_path();
    for (const auto& r : out) {
        if (r.provenance_type == "derived" && !fs::exists(root / r.oracle)) {
            throw ContractError("golden " + r.id + ": oracle script missing: " + r.oracle);
        }
    }
    return out;
}

GoldenReport verify_goldens(const std::vector<GoldenRecord>& corpus) {
    if (corpus.empty()) {
        throw ContractError("verify_goldens: corpus must be nonempty");
    }
    GoldenReport report;
    for (const auto& rec : corpus) {
        GoldenResult res;
        res.id = rec.id;
        res.expected = rec.expected.dump();
        try {
            ExperimentConfig cfg = ExperimentConfig::from_json(rec.config);
            cfg.out.clear();  // in-process check, no artifact
            const CommandOutput out = execute_command(cfg);
            const Json observed = out.result.at(Json::json_pointer(rec.extract));
            res.observed = observed.dump();
            if (rec.expected.is_number() && observed.is_number()) {
                res.passed = std::abs(observed.get<double>() - rec.expected.get<double>()) <=
                             rec.tolerance;
            } else {
                res.passed = observed == rec.expected;
            }
        } catch (const std::exception& e) {
            res.passed = false;
            res.note = e.what();
        }
        if (!res.passed) ++report.failures;
        report.results.push_back(std::move(res));
    }
    return report;
}

}  // namespace projlab
