#pragma once

// Experiment configuration: a nested JSON document with typed, defaulted
// accessors.  Every key that is read gets marked; unknown keys left over after
// a verb has pulled its parameters raise ConfigError naming the path, so a
// typo cannot silently fall back to a default.

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace nnosim {

class ConfigReader {
  public:
    ConfigReader();  // all defaults
    explicit ConfigReader(const nlohmann::ordered_json& doc);
    static ConfigReader from_file(const std::filesystem::path& path);

    double number(const std::string& path, double fallback);
    int integer(const std::string& path, int fallback);
    std::uint64_t unsigned_integer(const std::string& path, std::uint64_t fallback);
    bool boolean(const std::string& path, bool fallback);
    std::string text(const std::string& path, const std::string& fallback);
    std::vector<double> number_list(const std::string& path,
                                    const std::vector<double>& fallback);
    std::vector<int> integer_list(const std::string& path,
                                  const std::vector<int>& fallback);
    std::vector<std::string> text_list(const std::string& path,
                                       const std::vector<std::string>& fallback);

    // Replaces (or creates) a value before it is read, so command-line
    // overrides land in the resolved echo exactly like file-borne settings.
    void override_value(const std::string& path, nlohmann::ordered_json value);

    // Marks a whole section as consumed even if no key was read from it.
    void allow_section(const std::string& path);

    // Throws ConfigError naming the first key that was never consumed.
    void reject_unknown() const;

    // Everything a run actually used, with its resolved value: feeding this
    // document back reproduces the run.
    const nlohmann::ordered_json& resolved() const { return resolved_; }

  private:
    const nlohmann::ordered_json* find(const std::string& path) const;
    void record(const std::string& path, nlohmann::ordered_json value);

    nlohmann::ordered_json doc_;
    nlohmann::ordered_json resolved_;
    std::set<std::string> consumed_;
};

// FNV-1a over the compact dump; stable across runs and platforms.
std::string config_hash(const nlohmann::ordered_json& doc);

}  // namespace nnosim
