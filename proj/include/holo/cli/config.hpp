// config.hpp — run configuration, schema registry and validation

#pragma once

#include "holo/loop.hpp"
#include "holo/model.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace holo::cli {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

/// Config does not match the schema (exit 2).
struct SchemaError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& experiment_names();
std::string experiment_summary(const std::string& name);

/// Full JSON schema of a run config for one experiment. Throws SchemaError for unknown names.
json experiment_schema(const std::string& name);

/// Checks `value` against the schema subset used here: type, properties, required,
/// additionalProperties, items, enum, const, minimum, exclusiveMinimum, maximum,
/// minItems, maxItems, oneOf. Returns the first violation, prefixed with its path.
std::optional<std::string> schema_violation(const json& value, const json& schema, const std::string& path = "$");

struct RunConfig {
    std::string experiment;
    ModelConfig model;
    json params;
    std::optional<std::string> output;
    std::uint64_t seed = 0;
    int steps = 4096;
    bool steps_given = false;
    json raw;  // config after command-line overrides
};

struct Overrides {
    std::optional<int> steps;
    std::optional<std::uint64_t> seed;
};

/// Schema validation followed by semantic checks; throws SchemaError.
RunConfig parse_run_config(const json& doc, const Overrides& overrides = {});
RunConfig load_run_config(const std::string& path, const Overrides& overrides = {});

cplx complex_from_json(const json& v);
json complex_to_json(cplx z);
std::vector<cplx> complex_list(const json& v);

/// Loop from a {profile: "pacman" | "samples", …} block and a direction.
Loop loop_from_json(const json& spec, const std::vector<cplx>& direction);

}  // namespace holo::cli
