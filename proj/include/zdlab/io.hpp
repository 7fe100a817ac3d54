#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "zdlab/game.hpp"
#include "zdlab/markov.hpp"
#include "zdlab/search.hpp"
#include "zdlab/sim.hpp"
#include "zdlab/strategy.hpp"
#include "zdlab/zd.hpp"

namespace zdlab {

using Json = nlohmann::ordered_json;

// Parse failures raise Error(kInvalidInput) whose message starts with the
// field path, e.g. "payoffs[1][3]: expected a rational".
Json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const Json& value);

// Accepts "p/q", decimal strings and JSON numbers (floats via their shortest
// round-trip decimal).
Rational rational_from_json(const Json& value, const std::string& where);
Json to_json(const Rational& value);
Json to_json(const RationalVector& values);
RationalVector rational_vector_from_json(const Json& value, const std::string& where);

// {"actions": [2, 2], "payoffs": [[...], [...]]}; players 1-based in files.
Game game_from_json(const Json& value);
Json to_json(const Game& game);

// {"perfect": true} or {"signals": [...], "law": [[W(tau|sigma')...] per state]}.
MonitoringStructure monitoring_from_json(const Json& value, const StateSpace& space);
Json to_json(const MonitoringStructure& monitoring);

// {"player": n, "table": [prev][signal] -> distribution over actions},
// {"player": n, "marginal": [state] -> distribution} (perfect monitoring only),
// or {"player": n, "repeat": true}.
MemoryOneStrategy strategy_from_json(const Json& value, const StateSpace& space,
                                     const MonitoringStructure& monitoring);
Json to_json(const MemoryOneStrategy& strategy, const MonitoringStructure& monitoring);

Json to_json(const LinearRelation& relation);
Json to_json(const ZdCertificate& certificate);
ZdCertificate certificate_from_json(const Json& value);

Json to_json(const ConsistencySystem& system);
Json to_json(const IndependenceResult& result);
Json to_json(const SearchResult& result, const MonitoringStructure& monitoring);
Json to_json(const StationaryResult& result);

}  // namespace zdlab
