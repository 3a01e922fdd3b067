#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace qsa::cli {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class Kind { Number, Integer, String, Boolean, NumberArray, IntegerArray, Object };

struct Field {
    std::string name;
    Kind kind = Kind::Number;
    json fallback;
    std::string description;
    double min = -1e300, max = 1e300;
    std::vector<std::string> choices;
    std::vector<Field> children;  // Object only
};

struct CommandSchema {
    std::string name;
    std::string description;
    std::vector<Field> params;
};

struct SchemaError : std::runtime_error {
    explicit SchemaError(std::vector<std::string> e)
        : std::runtime_error("config does not match the schema"), errors(std::move(e)) {}
    std::vector<std::string> errors;  // "<json pointer>: message"
};

const std::vector<CommandSchema>& command_schemas();
const CommandSchema& schema_for(const std::string& command);

// full config with every default filled in
json default_config(const std::string& command);
// validates a parsed config against the command, returns the merged params block
json validate_config(const json& config, const std::string& command);
// JSON Schema document covering every command
json schema_document();

}  // namespace qsa::cli
