#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qsum/ivp.hpp"
#include "qsum/qvec.hpp"

namespace qsum {

using Json = nlohmann::json;

Json to_json(const QVec& v);
Json to_json(const VecFamily& family);
Json to_json(const PairSystem& system);

/// Entries only, as a plain array.
Json entries_json(const QVec& v);

// Parsers validate every invariant and throw SchemaError carrying the JSON
// pointer of the first offending value.
QVec qvec_from_json(const Json& j);
VecFamily family_from_json(const Json& j);
PairSystem system_from_json(const Json& j);

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

/// Compact, key-sorted serialization followed by a newline.
std::string dump(const Json& j);

}  // namespace qsum
