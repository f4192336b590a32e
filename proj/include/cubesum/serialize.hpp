#pragma once

// Canonical serialization of certificates, lemma reports, proof traces and
// search results.  Domain numbers always serialize as decimal strings;
// several of them exceed what a double can carry.  Objects keep insertion
// order so identical values always produce identical bytes.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cubesum/search.hpp"
#include "cubesum/theorem.hpp"

namespace cubesum {

using Json = nlohmann::ordered_json;

Json to_json(const ValueMap& m);
Json to_json(const Factorization& f);
Json to_json(const Certificate& cert);
Json to_json(const LemmaReport& report);
Json to_json(const ProofTrace& trace);
Json to_json(const Solution& sol);
Json to_json(const VerificationReport& report);

// Tabular search results: header "x,k,y,certificate,y_factorization",
// one comma-separated row per solution, newline-terminated.
std::string solutions_table(const std::vector<Solution>& sols);

// Cache identity of a search: every field that affects results
// (worker_count deliberately excluded), plus the schema version.
std::string canonical_config_string(const SearchConfig& cfg);
std::string config_hash(const SearchConfig& cfg);  // fnv1a-64 of the above, hex

std::string mode_token(SearchMode mode);           // "all-squares" / "prime-power-only"
std::optional<SearchMode> parse_mode(const std::string& token);

inline constexpr int kSchemaVersion = 1;

struct Envelope {
    std::string command;
    Json inputs;
    Json result;
    std::optional<std::uint64_t> timing_ms;  // omitted under --no-timing
};

Json to_json(const Envelope& env);

}  // namespace cubesum
