#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "projlab/entropy.hpp"
#include "projlab/free_moments.hpp"
#include "projlab/grassmann.hpp"
#include "projlab/measure.hpp"
#include "projlab/pair_state.hpp"
#include "projlab/pressure.hpp"
#include "projlab/transport.hpp"

namespace projlab {

/// Field order is part of the output-byte contract, so the ordered variant
/// is used everywhere.
using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal rendering (matches the JSON number format).
std::string format_double(double v);

/// Tabular rendering (CSV output path). All commands provide one.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC-4180 CSV with a header row, CRLF line endings, UTF-8.
std::string render_csv(const Table& table);

/// Hex SHA-1 of the git blob framing "blob <len>\0<bytes>".
std::string git_blob_sha1(const std::string& bytes);

// ---- descriptor parsing (configs) ----

/// {"kind": "zero"|"identity"|"constant"|"power"|"affine"|"scaled"|"table", ...}
FunctionOnUnitInterval parse_field(const Json& j);
/// Short id for logs, e.g. "power:2".
std::string field_id(const Json& j);

/// {"kind":"grid"|"samples"|"atoms","atoms":[[x,w],...],"atom0":..,"atom1":..}
IntervalMeasure parse_measure(const Json& j);
Json measure_to_json(const IntervalMeasure& m);

/// {"type":"free","alpha":..,"beta":..,"grid":..}
/// {"type":"explicit","corners":[a11,a10,a01,a00],"nu":{measure}}
/// {"type":"pushforward","base":{state},"psi":{field}}
PairState parse_state(const Json& j);
Json state_to_json(const PairState& s);

/// {"A":..,"B":..,"psi":{field}}
PressureHamiltonian parse_hamiltonian(const Json& j);

/// {"blocks":[{"type":"single","alpha":..},
///            {"type":"pair","state":{..},"sampler":"haar"|"gibbs"|"none","psi":{..}}]}
BlockFamily parse_family(const Json& j);

/// Generator words as digit strings ("0101"); pair words as "efef".
Word parse_word(const std::string& s);
std::string word_to_string(const Word& w);

Json entropy_report_to_json(const EntropyReport& r);
Json transport_report_to_json(const TransportReport& r);

}  // namespace projlab
