#include "nnosim/config.hpp"

#include <fstream>

#include "nnosim/errors.hpp"

namespace nnosim {

ConfigReader::ConfigReader() : doc_(nlohmann::ordered_json::object()) {}

ConfigReader::ConfigReader(const nlohmann::ordered_json& doc) : doc_(doc) {
    if (!doc_.is_object()) {
        throw ConfigError("configuration root must be a JSON object");
    }
}

ConfigReader ConfigReader::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path.string());
    }
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return ConfigReader(doc);
}

const nlohmann::ordered_json* ConfigReader::find(const std::string& path) const {
    const nlohmann::ordered_json* node = &doc_;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = path.find('.', start);
        std::string key = path.substr(start, dot == std::string::npos
                                                 ? std::string::npos
                                                 : dot - start);
        if (!node->is_object() || !node->contains(key)) return nullptr;
        node = &(*node)[key];
        if (dot == std::string::npos) return node;
        start = dot + 1;
    }
}

void ConfigReader::record(const std::string& path, nlohmann::ordered_json value) {
    consumed_.insert(path);
    nlohmann::ordered_json* node = &resolved_;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = path.find('.', start);
        std::string key = path.substr(start, dot == std::string::npos
                                                 ? std::string::npos
                                                 : dot - start);
        if (dot == std::string::npos) {
            (*node)[key] = std::move(value);
            return;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
}

double ConfigReader::number(const std::string& path, double fallback) {
    double v = fallback;
    if (const auto* node = find(path)) {
        if (!node->is_number()) {
            throw ConfigError(path + ": expected a number");
        }
        v = node->get<double>();
    }
    record(path, v);
    return v;
}

int ConfigReader::integer(const std::string& path, int fallback) {
    int v = fallback;
    if (const auto* node = find(path)) {
        if (!node->is_number_integer()) {
            throw ConfigError(path + ": expected an integer");
        }
        v = node->get<int>();
    }
    record(path, v);
    return v;
}

std::uint64_t ConfigReader::unsigned_integer(const std::string& path,
                                             std::uint64_t fallback) {
    std::uint64_t v = fallback;
    if (const auto* node = find(path)) {
        if (!node->is_number_unsigned() && !node->is_number_integer()) {
            throw ConfigError(path + ": expected a non-negative integer");
        }
        if (node->is_number_integer() && node->get<long long>() < 0) {
            throw ConfigError(path + ": expected a non-negative integer");
        }
        v = node->get<std::uint64_t>();
    }
    record(path, v);
    return v;
}

bool ConfigReader::boolean(const std::string& path, bool fallback) {
    bool v = fallback;
    if (const auto* node = find(path)) {
        if (!node->is_boolean()) {
            throw ConfigError(path + ": expected true or false");
        }
        v = node->get<bool>();
    }
    record(path, v);
    return v;
}

std::string ConfigReader::text(const std::string& path,
                               const std::string& fallback) {
    std::string v = fallback;
    if (const auto* node = find(path)) {
        if (!node->is_string()) {
            throw ConfigError(path + ": expected a string");
        }
        v = node->get<std::string>();
    }
    record(path, v);
    return v;
}

std::vector<double> ConfigReader::number_list(
    const std::string& path, const std::vector<double>& fallback) {
    std::vector<double> v = fallback;
    if (const auto* node = find(path)) {
        if (!node->is_array()) {
            throw ConfigError(path + ": expected an array of numbers");
        }
        v.clear();
        for (const auto& item : *node) {
            if (!item.is_number()) {
                throw ConfigError(path + ": expected an array of numbers");
            }
            v.push_back(item.get<double>());
        }
    }
    record(path, v);
    return v;
}

std::vector<int> ConfigReader::integer_list(const std::string& path,
                                            const std::vector<int>& fallback) {
    std::vector<int> v = fallback;
    if (const auto* node = find(path)) {
        if (!node->is_array()) {
            throw ConfigError(path + ": expected an array of integers");
        }
        v.clear();
        for (const auto& item : *node) {
            if (!item.is_number_integer()) {
                throw ConfigError(path + ": expected an array of integers");
            }
            v.push_back(item.get<int>());
        }
    }
    record(path, v);
    return v;
}

std::vector<std::string> ConfigReader::text_list(
    const std::string& path, const std::vector<std::string>& fallback) {
    std::vector<std::string> v = fallback;
    if (const auto* node = find(path)) {
        if (!node->is_array()) {
            throw ConfigError(path + ": expected an array of strings");
        }
        v.clear();
        for (const auto& item : *node) {
            if (!item.is_string()) {
                throw ConfigError(path + ": expected an array of strings");
            }
            v.push_back(item.get<std::string>());
        }
    }
    record(path, v);
    return v;
}

void ConfigReader::override_value(const std::string& path,
                                  nlohmann::ordered_json value) {
    nlohmann::ordered_json* node = &doc_;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = path.find('.', start);
        std::string key = path.substr(start, dot == std::string::npos
                                                 ? std::string::npos
                                                 : dot - start);
        if (!node->is_object()) {
            throw ConfigError(path + ": cannot override inside a non-object");
        }
        if (dot == std::string::npos) {
            (*node)[key] = std::move(value);
            return;
        }
        if (!node->contains(key)) (*node)[key] = nlohmann::ordered_json::object();
        node = &(*node)[key];
        start = dot + 1;
    }
}

void ConfigReader::allow_section(const std::string& path) {
    consumed_.insert(path);
}

namespace {

void collect_leaves(const nlohmann::ordered_json& node, const std::string& prefix,
                    std::vector<std::string>& out) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            collect_leaves(value, prefix.empty() ? key : prefix + "." + key, out);
        }
    } else {
        out.push_back(prefix);
    }
}

}  // namespace

void ConfigReader::reject_unknown() const {
    std::vector<std::string> leaves;
    collect_leaves(doc_, "", leaves);
    for (const auto& leaf : leaves) {
        if (consumed_.count(leaf)) continue;
        // A consumed section prefix covers its members.
        bool covered = false;
        for (const auto& c : consumed_) {
            if (leaf.size() > c.size() && leaf.compare(0, c.size(), c) == 0 &&
                leaf[c.size()] == '.') {
                covered = true;
                break;
            }
        }
        if (!covered) {
            throw ConfigError("unknown config key: " + leaf);
        }
    }
}

std::string config_hash(const nlohmann::ordered_json& doc) {
    const std::string dump = doc.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace nnosim
