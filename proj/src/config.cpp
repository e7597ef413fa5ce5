#include "qsc/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "qsc/errors.hpp"

namespace qsc {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "model.B",      "model.C",       "model.D",          "model.K",
        "model.gamma",  "model.sigma",   "model.kappa",      "model.eta",
        "model.a0_hat", "model.sigma0",  "model.T",          "model.y0",
        "run.qs",       "run.lambdas",   "run.Ns",           "run.n_paths",
        "run.seed",     "run.mode",      "run.latent_scheme", "run.threads",
        "qlearn.mdp",   "qlearn.q",      "qlearn.lambda",    "qlearn.tol",
        "qlearn.max_iters",
    };
    return keys;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
    KeyValueConfig cfg;
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        for (char marker : {'#', ';'}) {
            const auto pos = line.find(marker);
            if (pos != std::string::npos) line.erase(pos);
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no),
                                  "malformed section header '" + line + "'");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no),
                              "expected 'key = value', got '" + line + "'");
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line_no), "empty key");
        }
        if (!section.empty() && key.find('.') == std::string::npos) {
            key = section + "." + key;
        }
        cfg.values_[key] = value;
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text) {
    std::istringstream ss(text);
    return parse(ss);
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    return parse(in);
}

void KeyValueConfig::set(const std::string& dotted_key, const std::string& value) {
    const std::string key = trim(dotted_key);
    if (key.empty()) throw ConfigError(dotted_key, "empty override key");
    values_[key] = trim(value);
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + it->second + "'");
    }
}

std::uint64_t KeyValueConfig::get_uint(const std::string& key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a nonnegative integer, got '" + it->second + "'");
    }
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected an integer, got '" + it->second + "'");
    }
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key,
                                                    const std::vector<double>& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    for (const std::string& item : split_list(it->second)) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError(key, "expected a comma-separated number list, got '" + it->second +
                                       "'");
        }
    }
    if (out.empty()) throw ConfigError(key, "list must be nonempty");
    return out;
}

std::vector<std::size_t> KeyValueConfig::get_size_list(
    const std::string& key, const std::vector<std::size_t>& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<std::size_t> out;
    for (const std::string& item : split_list(it->second)) {
        try {
            out.push_back(static_cast<std::size_t>(std::stoull(item)));
        } catch (const std::exception&) {
            throw ConfigError(key, "expected a comma-separated integer list, got '" +
                                       it->second + "'");
        }
    }
    if (out.empty()) throw ConfigError(key, "list must be nonempty");
    return out;
}

std::string KeyValueConfig::resolved_text() const {
    std::ostringstream out;
    for (const auto& [key, value] : values_) {
        out << key << " = " << value << "\n";
    }
    return out.str();
}

void validate_config_keys(const KeyValueConfig& cfg) {
    for (const auto& [key, value] : cfg.values()) {
        (void)value;
        if (known_keys().count(key) == 0) {
            throw ConfigError(key, "unknown config key '" + key + "'");
        }
    }
}

ExperimentConfig experiment_from_config(const KeyValueConfig& cfg) {
    validate_config_keys(cfg);
    ExperimentConfig out;
    out.model.B = cfg.get_double("model.B", out.model.B);
    out.model.C = cfg.get_double("model.C", out.model.C);
    out.model.D = cfg.get_double("model.D", out.model.D);
    out.model.K = cfg.get_double("model.K", out.model.K);
    out.model.gamma = cfg.get_double("model.gamma", out.model.gamma);
    out.model.sigma = cfg.get_double("model.sigma", out.model.sigma);
    out.model.kappa = cfg.get_double("model.kappa", out.model.kappa);
    out.model.eta = cfg.get_double("model.eta", out.model.eta);
    out.model.a0_hat = cfg.get_double("model.a0_hat", out.model.a0_hat);
    out.model.Sigma0 = cfg.get_double("model.sigma0", out.model.Sigma0);
    out.model.T = cfg.get_double("model.T", out.model.T);
    out.model.y0 = cfg.get_double("model.y0", out.model.y0);
    out.qs = cfg.get_double_list("run.qs", out.qs);
    out.lambdas = cfg.get_double_list("run.lambdas", out.lambdas);
    out.Ns = cfg.get_size_list("run.Ns", out.Ns);
    out.n_paths = cfg.get_uint("run.n_paths", out.n_paths);
    out.seed = cfg.get_uint("run.seed", out.seed);
    out.mode = parse_sim_mode(cfg.get_string("run.mode", to_string(out.mode)));
    out.latent_scheme =
        parse_latent_scheme(cfg.get_string("run.latent_scheme", to_string(out.latent_scheme)));
    out.threads = cfg.get_int("run.threads", out.threads);
    try {
        out.validate();
    } catch (const std::exception& err) {
        throw ConfigError("run", err.what());
    }
    return out;
}

QlearnConfig qlearn_from_config(const KeyValueConfig& cfg) {
    validate_config_keys(cfg);
    QlearnConfig out;
    out.mdp_file = cfg.get_string("qlearn.mdp", out.mdp_file);
    out.q = cfg.get_double("qlearn.q", out.q);
    out.lambda = cfg.get_double("qlearn.lambda", out.lambda);
    out.tol = cfg.get_double("qlearn.tol", out.tol);
    out.max_iters = cfg.get_uint("qlearn.max_iters", out.max_iters);
    if (!(out.lambda > 0.0)) throw ConfigError("qlearn.lambda", "must be > 0");
    if (!(out.tol > 0.0)) throw ConfigError("qlearn.tol", "must be > 0");
    return out;
}

}  // namespace qsc
