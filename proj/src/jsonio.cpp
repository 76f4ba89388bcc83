#include "ldecm/jsonio.hpp"

#include <fstream>

namespace ldecm {

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void save_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    out << j.dump(2) << '\n';
}

void require_version(const json& j, int expected, const std::string& what) {
    if (!j.contains("version") || !j.at("version").is_number_integer()) {
        throw VersionMismatch(what + ": missing version field");
    }
    const int got = j.at("version").get<int>();
    if (got != expected) {
        throw VersionMismatch(what + ": version " + std::to_string(got) + ", expected " +
                              std::to_string(expected));
    }
}

}  // namespace ldecm
