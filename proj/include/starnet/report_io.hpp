#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "starnet/encoding.hpp"
#include "starnet/lhv.hpp"
#include "starnet/network.hpp"
#include "starnet/optimize.hpp"
#include "starnet/qcore.hpp"
#include "starnet/sos.hpp"

namespace starnet::io {

using nlohmann::json;

// Every report JSON carries a "type" tag so files are self-describing.
json to_json(const encoding::EncodingTable& table);
json to_json(const lhv::ClassicalBoundReport& report);
json to_json(const network::EvaluationReport& report);
json to_json(const sos::SosReport& report);
json to_json(const optimize::SweepResult& result);
json to_json(const optimize::SeesawState& state);
json to_json(const optimize::ActivationResult& result);
json to_json(const std::vector<network::BoundsRow>& rows);

// Row-major (re, im) pairs with a dim header.
json matrix_to_json(const qcore::Matrix& m);
qcore::Matrix matrix_from_json(const json& j);

network::EvaluationReport evaluation_from_json(const json& j);
optimize::SweepResult sweep_from_json(const json& j);

// CSV writers; all numbers formatted with 9 significant digits.
std::string evaluation_csv(const network::EvaluationReport& report);
std::string sweep_csv(const optimize::SweepResult& result);
std::string bounds_csv(const std::vector<network::BoundsRow>& rows);

struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::string version;
  std::uint64_t seed = 0;
  std::string timestamp;  // ISO 8601 UTC
  std::vector<std::string> outputs;
};

json to_json(const RunManifest& manifest);

// Writes content to path, then the manifest to path + ".manifest.json".
void write_with_manifest(const std::string& path, const std::string& content,
                         RunManifest manifest);

std::string read_file(const std::string& path);

}  // namespace starnet::io
