#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"

#include "topent/coupled_expansion.hpp"
#include "topent/errors.hpp"
#include "topent/system_model.hpp"
#include "topent/transition_matrix.hpp"

namespace topent {

using Json = nlohmann::json;

// Reads and parses a JSON file; unreadable files and malformed JSON raise
// ParseError.
Json load_json_file(const std::string& path);

// {"n": N, "rows": [[0|1,...],...]}; shape problems raise ParseError, content
// problems surface the matrix validation errors.
TransitionMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const TransitionMatrix& A);

// Either the explicit form {"domain","extension","steps"} or the generator
// {"family":"tent","slopes":{"kind",...,"values":[...]}}.
SystemModel system_from_json(const Json& j);
Json system_to_json(const SystemModel& sys);  // always the explicit form

// {"sets": [[l,r],...], "horizon": H}; horizon defaults to 0 (system horizon).
CoverConfig cover_from_json(const Json& j);
Json cover_to_json(const CoverConfig& cfg);

Json report_to_json(const ExpansionReport& report);
Json error_to_json(const Error& e);

// FNV-1a 64-bit digest, hex encoded; the digest that manifests embed.
std::string fnv1a_hex(const std::string& bytes);
std::string digest_file(const std::string& path);

// Everything needed to reproduce a run byte for byte.
struct RunManifest {
  std::string command;
  std::string version;
  Json config = Json::object();               // all defaults materialized
  std::map<std::string, std::string> inputs;  // file path -> content digest
  std::uint64_t seed = 0;
};

Json manifest_to_json(const RunManifest& m);
std::string manifest_digest(const RunManifest& m);

}  // namespace topent
