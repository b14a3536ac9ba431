#include <doctest.h>

#include <cmath>

#include "projlab/errors.hpp"
#include "projlab/experiment.hpp"
#include "projlab/goldens.hpp"

using namespace projlab;

namespace {

Json free_state_params(int grid = 1000) {
    Json state;
    state["type"] = "free";
    state["alpha"] = 0.5;
    state["beta"] = 0.5;
    state["grid"] = grid;
    return state;
}

}  // namespace

TEST_CASE("config validation") {
    Json j;
    j["command"] = "entropy";
    j["parameters"] = Json::object();
    CHECK_NOTHROW(ExperimentConfig::from_json(j));
    j["command"] = "nonsense";
    CHECK_THROWS_AS(ExperimentConfig::from_json(j), ContractError);
    j["command"] = "sample";  // stochastic without a seed
    CHECK_THROWS_AS(ExperimentConfig::from_json(j), ContractError);
    j["seed"] = 7;
    CHECK_NOTHROW(ExperimentConfig::from_json(j));
    j["format"] = "xml";
    CHECK_THROWS_AS(ExperimentConfig::from_json(j), ContractError);
}

TEST_CASE("entropy command: chi of the free state through the front door") {
    ExperimentConfig cfg;
    cfg.command = "entropy";
    cfg.parameters["op"] = "chi";
    cfg.parameters["state"] = free_state_params(4000);
    const CommandOutput out = execute_command(cfg);
    REQUIRE(out.result.at("chi_finite").get<bool>());
    CHECK(std::abs(out.result.at("chi").get<double>()) < 1e-3);
}

TEST_CASE("identical configs produce byte-identical artifacts") {
    ExperimentConfig cfg;
    cfg.command = "sample";
    cfg.parameters["op"] = "pair_eigenvalues";
    cfg.parameters["N"] = 16;
    cfg.parameters["k"] = 4;
    cfg.parameters["l"] = 6;
    cfg.parameters["samples"] = 5;
    cfg.seed = 99;
    cfg.seed_set = true;
    cfg.format = "csv";
    const RunOutcome a = run(cfg);
    const RunOutcome b = run(cfg);
    REQUIRE(a.exit_code == 0);
    CHECK(a.artifact == b.artifact);
    CHECK(a.content_hash == b.content_hash);
    // header row + 5 * 4 data rows, CRLF line endings
    CHECK(a.artifact.substr(0, a.artifact.find("\r\n")) == "sample,index,x");
}

TEST_CASE("json envelope carries the schema tag") {
    ExperimentConfig cfg;
    cfg.command = "pressure";
    cfg.parameters["op"] = "single";
    cfg.parameters["alpha"] = 1.0 / 3.0;
    cfg.parameters["h1"] = 3.0;
    cfg.parameters["h2"] = -3.0;
    cfg.seed = 1;
    cfg.seed_set = true;
    const RunOutcome r = run(cfg);
    REQUIRE(r.exit_code == 0);
    CHECK(r.envelope.at("schema") == "projlab/1");
    CHECK(r.envelope.at("result").at("value").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("guard errors exit with code 3") {
    ExperimentConfig cfg;
    cfg.command = "pressure";
    cfg.parameters["op"] = "mc";
    cfg.parameters["N"] = 96;
    cfg.parameters["k"] = 48;
    cfg.parameters["l"] = 48;
    cfg.parameters["h"] = Json{{"A", 0.0}, {"B", 0.0}, {"psi", {{"kind", "identity"}}}};
    cfg.parameters["samples"] = 100;
    cfg.parameters["method"] = "direct";
    cfg.seed = 5;
    cfg.seed_set = true;
    const RunOutcome r = run(cfg);
    CHECK(r.exit_code == 3);
    CHECK(r.envelope.at("error").at("type") == "guard");
}

TEST_CASE("contract violations exit with code 2") {
    ExperimentConfig cfg;
    cfg.command = "entropy";
    cfg.parameters["op"] = "b";
    cfg.parameters["s"] = 0.0;
    // missing "t"
    const RunOutcome r = run(cfg);
    CHECK(r.exit_code != 0);
}

TEST_CASE("pushforward delta command reports the consistency gap") {
    ExperimentConfig cfg;
    cfg.command = "pushforward";
    cfg.parameters["op"] = "delta";
    cfg.parameters["state"] = free_state_params(2000);
    cfg.parameters["psi"] = Json{{"kind", "power"}, {"p", 2.0}};
    const CommandOutput out = execute_command(cfg);
    CHECK(out.result.at("consistency_gap").get<double>() <= 1e-4);
}

TEST_CASE("microstate command with free targets") {
    ExperimentConfig cfg;
    cfg.command = "microstate";
    cfg.parameters["n"] = 2;
    cfg.parameters["ranks"] = Json::array({12, 12});
    cfg.parameters["N"] = 24;
    cfg.parameters["m"] = 2;
    cfg.parameters["eps"] = 0.2;
    cfg.parameters["targets_from"] = "free";
    cfg.parameters["samples"] = 40;
    cfg.seed = 3;
    cfg.seed_set = true;
    const CommandOutput out = execute_command(cfg);
    CHECK(out.result.at("acceptance_rate").get<double>() > 0.5);
}

TEST_CASE("golden records: provenance is enforced") {
    Json rec;
    rec["id"] = "x";
    rec["config"] = Json{{"command", "entropy"}, {"parameters", Json::object()}};
    rec["extract"] = "/value";
    rec["expected"] = 1.0;
    CHECK_THROWS_AS(GoldenRecord::from_json(rec), ContractError);
    rec["provenance"] = Json{{"type", "derived"}};  // derived without an oracle
    CHECK_THROWS_AS(GoldenRecord::from_json(rec), ContractError);
    rec["provenance"] = Json{{"type", "derived"}, {"oracle", "oracles/x.py"}};
    CHECK_NOTHROW(GoldenRecord::from_json(rec));
}

TEST_CASE("golden verification flags failures with the observed value") {
    GoldenRecord rec;
    rec.id = "b00";
    rec.config = Json{{"command", "entropy"},
                      {"parameters", {{"op", "b"}, {"s", 0.0}, {"t", 0.0}}}};
    rec.extract = "/value";
    rec.expected = -2.0 * std::log(2.0);
    rec.tolerance = 1e-12;
    rec.provenance_type = "exact";
    GoldenReport rep = verify_goldens({rec});
    CHECK(rep.failures == 0);
    rec.expected = 42.0;
    rep = verify_goldens({rec});
    CHECK(rep.failures == 1);
    CHECK(!rep.results[0].observed.empty());
}
