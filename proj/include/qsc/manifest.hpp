#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qsc {

inline constexpr const char* kVersionString = "qsc-0.1.0";

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::string& path);

struct OutputArtifact {
    std::string file;
    std::string checksum;  // "fnv1a64:<hex>"
    std::uint64_t bytes = 0;
};

/// Reproducibility record of one CLI run: the fully-resolved config (so a
/// manifest can itself be passed back as --config), its hash, the seed, and
/// checksums of every emitted file. Re-running the same config and seed
/// reproduces identical checksums; timings are informational only.
struct RunManifest {
    std::string version = kVersionString;
    std::string subcommand;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::string resolved_config;
    std::vector<OutputArtifact> outputs;
    std::map<std::string, double> timings_ms;

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);
};

/// True if the text looks like a manifest JSON rather than a key=value file.
bool looks_like_manifest(const std::string& text);

}  // namespace qsc
