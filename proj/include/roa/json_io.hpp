#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "roa/model.hpp"

namespace roa {

nlohmann::json to_json(const Instance& instance);
// Throws InvalidInput on a missing field or a schema mismatch; the parsed
// instance is validated before it is returned.
Instance instance_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const Assignment& x);
Assignment assignment_from_json(const nlohmann::json& doc);

// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);
nlohmann::json read_json(const std::filesystem::path& path);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& instance);

}  // namespace roa
