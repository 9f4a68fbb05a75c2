// JSON encodings for every file format the tools read or write. All
// schemas carry "schemaVersion": 1; unknown fields are rejected.
// Matrices are stored as {rows, cols, data} with data a flat row-major
// list of [re, im] alternating values.
#pragma once

#include <json.hpp>

#include "magicrect/inequality.hpp"
#include "magicrect/parity.hpp"
#include "magicrect/pqss.hpp"

namespace magicrect {

using Json = nlohmann::ordered_json;

struct SchemaError : Error {
  using Error::Error;
};

Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j);

Json state_to_json(const StateVector& s);
StateVector state_from_json(const Json& j);

Json game_to_json(const GameSpec& g);
GameSpec game_from_json(const Json& j);

// Self-contained strategy file (game + state + both PVM families).
Json strategy_to_json(const GameSpec& g, const Strategy& s);
std::pair<GameSpec, Strategy> strategy_from_json(const Json& j);

Json setup_to_json(const OperatorSetup& s);
OperatorSetup setup_from_json(const Json& j);

Json scenario_to_json(const ParityScenario& s);
ParityScenario scenario_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);

Json index_family_to_json(const IndexSetFamily& f);

// Read and strictly parse; throws SchemaError on IO, syntax, missing or
// unknown keys, or a version other than 1.
Json read_json_file(const std::string& path);

// Serializes with 2-space indent and writes through a temp file plus
// rename so partial output never appears at the target path.
void write_json_file(const std::string& path, const Json& j);

// Key scaffolding shared by the parsers: top-level object with exactly
// the given keys plus schemaVersion == 1.
void expect_keys(const Json& j, const std::vector<std::string>& required,
                 const std::vector<std::string>& optional = {});

}  // namespace magicrect
