#pragma once

// JSON schemas for instances, solutions, solver outcomes and statistics reports.
// Every number that may exceed 64 bits is a decimal string.

#include <filesystem>

#include <json.hpp>

#include "repsum/core.hpp"
#include "repsum/solvers.hpp"
#include "repsum/statslab.hpp"

namespace repsum {

using Json = nlohmann::json;

Json to_json(const ProblemInstance& instance);
/// Throws InvalidInstance on schema errors (missing fields, non-string numbers...).
ProblemInstance instance_from_json(const Json& j);

Json to_json(const Solution& solution);
Solution solution_from_json(const Json& j);

Json to_json(const SolveOutcome& outcome);
Json to_json(const StatReport& report);

ProblemInstance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const ProblemInstance& instance);

/// "<instance>.witness.json" next to the instance file.
std::filesystem::path witness_path(const std::filesystem::path& instance_path);

}  // namespace repsum
