#pragma once

// Structured run record.  Every verb writes exactly one report.json into its
// output directory — also on failure, with ok=false and the error message —
// so batch drivers never have to parse stdout.  No timestamps: reruns with
// identical inputs produce byte-identical reports.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace nnosim {

struct RunCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct RunReport {
    std::string verb;
    std::string version;
    std::uint64_t seed = 0;
    std::string config_hash;
    nlohmann::ordered_json config;   // resolved values actually used
    nlohmann::ordered_json metrics;  // scalar results
    std::vector<RunCheck> checks;
    std::vector<std::string> outputs;  // files written, relative to out dir
    bool ok = false;
    std::string error;  // set when ok is false due to an exception

    // `pass` folds into the overall verdict; returns it for inline use.
    bool check(const std::string& name, bool pass, const std::string& detail = "");
    void note_output(const std::filesystem::path& out_dir,
                     const std::filesystem::path& file);

    nlohmann::ordered_json to_json() const;
    void write(const std::filesystem::path& out_dir) const;
};

}  // namespace nnosim
