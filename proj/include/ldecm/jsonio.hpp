#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ldecm/errors.hpp"

namespace ldecm {

using json = nlohmann::json;

/// Parses a JSON file; missing file or malformed content raises DataError.
json load_json(const std::filesystem::path& path);

/// Writes with 2-space indent and a trailing newline.
void save_json(const json& j, const std::filesystem::path& path);

/// Raises VersionMismatch unless j["version"] == expected.
void require_version(const json& j, int expected, const std::string& what);

/// Field access that reports the file context on failure.
template <typename T>
T require_field(const json& j, const std::string& key, const std::string& what) {
    if (!j.contains(key)) {
        throw DataError(what + ": missing field '" + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw DataError(what + ": field '" + key + "': " + e.what());
    }
}

}  // namespace ldecm
