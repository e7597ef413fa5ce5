#include "qsc/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qsc/errors.hpp"

namespace qsc {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NumericalError("cannot open file for checksum: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return fnv1a64(buf.str());
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["subcommand"] = subcommand;
    j["seed"] = seed;
    j["config_hash"] = config_hash;
    j["resolved_config"] = resolved_config;
    j["outputs"] = nlohmann::json::array();
    for (const OutputArtifact& out : outputs) {
        j["outputs"].push_back(
            {{"file", out.file}, {"checksum", out.checksum}, {"bytes", out.bytes}});
    }
    j["timings_ms"] = timings_ms;
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& err) {
        throw ConfigError("manifest", std::string("invalid manifest JSON: ") + err.what());
    }
    RunManifest m;
    m.version = j.value("version", "");
    m.subcommand = j.value("subcommand", "");
    m.seed = j.value("seed", std::uint64_t{0});
    m.config_hash = j.value("config_hash", "");
    m.resolved_config = j.value("resolved_config", "");
    if (j.contains("outputs")) {
        for (const auto& out : j["outputs"]) {
            m.outputs.push_back({out.value("file", ""), out.value("checksum", ""),
                                 out.value("bytes", std::uint64_t{0})});
        }
    }
    if (j.contains("timings_ms")) {
        for (const auto& [key, value] : j["timings_ms"].items()) {
            m.timings_ms[key] = value.get<double>();
        }
    }
    return m;
}

bool looks_like_manifest(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{';
    }
    return false;
}

}  // namespace qsc
