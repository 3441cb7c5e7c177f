#pragma once

// Experiment verbs shared by the command-line tool and the python module.
// Each verb reads a config document, runs one named recipe, writes its
// artifacts plus a report.json into the output directory, and returns the
// report.  Failures never escape: the report carries ok=false and the error.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nnosim/report.hpp"

namespace nnosim {

struct VerbOptions {
    std::filesystem::path config_path;  // empty: built-in defaults
    std::filesystem::path out_dir = "out";
    std::optional<std::uint64_t> seed;  // overrides the seed keys a verb reads
    std::optional<std::string> mode;    // overrides the verb's mode selection
};

const std::vector<std::string>& verb_names();

RunReport run_verb(const std::string& verb, const VerbOptions& opts);

}  // namespace nnosim
