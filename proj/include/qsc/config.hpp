#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>

#include "qsc/sim.hpp"

namespace qsc {

/// Sectioned key = value config, flattened to dotted keys ("model.kappa").
/// '#' and ';' start comments; section headers are [section]. Overrides are
/// applied with the same dotted paths (CLI --set, env). The canonical
/// serialized form (sorted keys) is embedded in run manifests and hashed.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& in);
    static KeyValueConfig parse_text(const std::string& text);
    static KeyValueConfig parse_file(const std::string& path);

    void set(const std::string& dotted_key, const std::string& value);
    bool contains(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;
    std::vector<std::size_t> get_size_list(const std::string& key,
                                           const std::vector<std::size_t>& fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

    /// Canonical "key = value" listing, sorted by key.
    std::string resolved_text() const;

private:
    std::map<std::string, std::string> values_;
};

/// Typed view of the [qlearn] section.
struct QlearnConfig {
    std::string mdp_file;
    double q = 2.0;
    double lambda = 0.5;
    double tol = 1e-10;
    std::size_t max_iters = 100000;
};

/// Builds the experiment config, rejecting unknown keys (ConfigError names
/// the offending field path).
ExperimentConfig experiment_from_config(const KeyValueConfig& cfg);
QlearnConfig qlearn_from_config(const KeyValueConfig& cfg);

/// Full schema check: every key present must be known.
void validate_config_keys(const KeyValueConfig& cfg);

}  // namespace qsc
