#include "nnosim/report.hpp"

#include "nnosim/csv.hpp"

namespace nnosim {

bool RunReport::check(const std::string& name, bool pass,
                      const std::string& detail) {
    checks.push_back({name, pass, detail});
    return pass;
}

void RunReport::note_output(const std::filesystem::path& out_dir,
                            const std::filesystem::path& file) {
    outputs.push_back(std::filesystem::relative(file, out_dir).generic_string());
}

nlohmann::ordered_json RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["verb"] = verb;
    j["version"] = version;
    j["seed"] = seed;
    j["config_hash"] = config_hash;
    j["ok"] = ok;
    if (!error.empty()) j["error"] = error;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        j["checks"].push_back(jc);
    }
    j["metrics"] = metrics.is_null() ? nlohmann::ordered_json::object() : metrics;
    j["outputs"] = outputs;
    j["config"] = config.is_null() ? nlohmann::ordered_json::object() : config;
    return j;
}

void RunReport::write(const std::filesystem::path& out_dir) const {
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir / "report.json", to_json().dump(2) + "\n");
}

}  // namespace nnosim
