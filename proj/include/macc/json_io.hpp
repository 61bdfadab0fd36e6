#pragma once

#include "macc/analysis.hpp"
#include "macc/design.hpp"
#include "macc/engine.hpp"
#include "macc/topology.hpp"

#include <json.hpp>

namespace macc {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& value);

Json design_json(const Design& design);
Design design_from_json(const Json& j);
Json verification_json(const VerificationReport& report);

// {m, b, z, access: [[cache ids per user]]}; cache id = (i-1)*b + j.
Json topology_json(const Topology& topology);
Topology topology_from_json(const Json& j);
Json validation_json(const ValidationReport& report);
Json matching_json(const MatchingAssignment& matching);

// One JSONL record; payload_hex only when the payload is non-empty.
Json transmission_json(const Transmission& tx, int b);
Json simulation_json(const SimulationReport& report);

Json comparison_json(int K, int z, const std::vector<ComparisonRow>& rows);

}  // namespace macc
