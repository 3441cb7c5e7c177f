#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nnosim/config.hpp"
#include "nnosim/errors.hpp"
#include "nnosim/verbs.hpp"

using namespace nnosim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("nnosim-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void dump(const fs::path& p, const nlohmann::ordered_json& doc) {
    std::ofstream out(p);
    out << doc.dump(2) << "\n";
}

// Every artifact a run listed, compared byte for byte across two out dirs.
void check_identical_outputs(const RunReport& rep, const fs::path& a,
                             const fs::path& b) {
    std::vector<std::string> files = rep.outputs;
    files.push_back("report.json");
    for (const auto& f : files) {
        INFO("artifact ", f);
        CHECK(slurp(a / f) == slurp(b / f));
    }
}

}  // namespace

TEST_CASE("config reader resolves typed values and fallbacks") {
    ConfigReader cfg(nlohmann::ordered_json::parse(R"({
        "device": {"r_x_mohm_per_um": 0.5},
        "array": {"n": 12, "mode": "bypass"},
        "schedule": {"n_sample_sweep": [4, 1, 2], "modes": ["bypass"]}
    })"));
    CHECK(cfg.number("device.r_x_mohm_per_um", 0.4) == 0.5);
    CHECK(cfg.number("device.tau_x_us", 20.0) == 20.0);  // fallback
    CHECK(cfg.integer("array.n", 0) == 12);
    CHECK(cfg.text("array.mode", "spatiotemporal") == "bypass");
    CHECK(cfg.integer_list("schedule.n_sample_sweep", {1}) ==
          std::vector<int>{4, 1, 2});
    CHECK(cfg.text_list("schedule.modes", {}) ==
          std::vector<std::string>{"bypass"});

    // The resolved echo records what was read, including applied fallbacks.
    const auto& res = cfg.resolved();
    CHECK(res["device"]["tau_x_us"] == 20.0);
    CHECK(res["array"]["mode"] == "bypass");
}

TEST_CASE("config reader rejects type mismatches and unknown keys") {
    ConfigReader bad_type(
        nlohmann::ordered_json::parse(R"({"array": {"n": "six"}})"));
    CHECK_THROWS_AS(bad_type.integer("array.n", 0), ConfigError);

    ConfigReader typo(
        nlohmann::ordered_json::parse(R"({"array": {"n": 6, "typo_key": 1}})"));
    CHECK(typo.integer("array.n", 0) == 6);
    try {
        typo.reject_unknown();
        FAIL("unknown key not rejected");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("array.typo_key") != std::string::npos);
    }
}

TEST_CASE("config overrides land in the resolved echo") {
    ConfigReader cfg(nlohmann::ordered_json::parse(R"({"array": {"seed": 1}})"));
    cfg.override_value("array.seed", 99);
    cfg.override_value("task.gen_seed", 99);  // section created on demand
    CHECK(cfg.unsigned_integer("array.seed", 42) == 99);
    CHECK(cfg.unsigned_integer("task.gen_seed", 42) == 99);
    CHECK(cfg.resolved()["array"]["seed"] == 99);

    ConfigReader scalar(nlohmann::ordered_json::parse(R"({"array": 5})"));
    CHECK_THROWS_AS(scalar.override_value("array.seed", 1), ConfigError);
}

TEST_CASE("config hash is stable and content-sensitive") {
    const auto a = nlohmann::ordered_json::parse(R"({"x": 1})");
    const auto b = nlohmann::ordered_json::parse(R"({"x": 2})");
    CHECK(config_hash(a) == config_hash(a));
    CHECK(config_hash(a) != config_hash(b));
    CHECK(config_hash(a).size() == 16);
}

TEST_CASE("verbs are listed and unknown verbs fail with a written report") {
    CHECK(verb_names() == std::vector<std::string>{
                              "device-fit", "pattern-demo", "classify",
                              "seizure-demo", "field-validate", "gen-data",
                              "config-print"});
    const fs::path dir = scratch("verb-unknown");
    VerbOptions opts;
    opts.out_dir = dir;
    const RunReport rep = run_verb("no-such-verb", opts);
    CHECK_FALSE(rep.ok);
    CHECK(rep.error.find("unknown verb") != std::string::npos);
    const auto on_disk = nlohmann::ordered_json::parse(slurp(dir / "report.json"));
    CHECK(on_disk["ok"] == false);
}

TEST_CASE("device-fit runs green and its artifacts are deterministic") {
    const fs::path a = scratch("fit-a");
    const fs::path b = scratch("fit-b");
    VerbOptions opts;
    opts.out_dir = a;
    const RunReport rep = run_verb("device-fit", opts);
    REQUIRE(rep.ok);
    for (const auto& c : rep.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.pass);
    }
    for (const auto& f : rep.outputs) CHECK(fs::exists(a / f));

    opts.out_dir = b;
    REQUIRE(run_verb("device-fit", opts).ok);
    check_identical_outputs(rep, a, b);
}

TEST_CASE("feeding the resolved config back reproduces the run") {
    const fs::path a = scratch("echo-a");
    const fs::path b = scratch("echo-b");
    VerbOptions opts;
    opts.out_dir = a;
    const RunReport first = run_verb("pattern-demo", opts);
    REQUIRE(first.ok);

    const auto report = nlohmann::ordered_json::parse(slurp(a / "report.json"));
    const fs::path echo = a / "echo.json";
    dump(echo, report["config"]);

    VerbOptions again;
    again.config_path = echo;
    again.out_dir = b;
    const RunReport second = run_verb("pattern-demo", again);
    REQUIRE(second.ok);
    CHECK(second.config_hash == first.config_hash);
    check_identical_outputs(first, a, b);
}

TEST_CASE("a typo in a config file fails the run and names the key") {
    const fs::path dir = scratch("typo");
    dump(dir / "bad.json",
         nlohmann::ordered_json::parse(R"({"device": {"tau_x_uss": 20}})"));
    VerbOptions opts;
    opts.config_path = dir / "bad.json";
    opts.out_dir = dir / "out";
    const RunReport rep = run_verb("device-fit", opts);
    CHECK_FALSE(rep.ok);
    CHECK(rep.error.find("tau_x_uss") != std::string::npos);
}

TEST_CASE("seed and mode land in the resolved config") {
    const fs::path dir = scratch("overrides");
    VerbOptions opts;
    opts.out_dir = dir;
    opts.seed = 1234;
    const RunReport rep = run_verb("gen-data", opts);
    REQUIRE(rep.ok);
    CHECK(rep.seed == 1234);
    const auto report = nlohmann::ordered_json::parse(slurp(dir / "report.json"));
    CHECK(report["config"]["task"]["gen_seed"] == 1234);
    CHECK(report["config"]["seizure"]["gen_seed"] == 1234);

    VerbOptions pd;
    pd.out_dir = dir / "pd";
    pd.mode = "temporal-only";
    const RunReport prep = run_verb("pattern-demo", pd);
    const auto pr = nlohmann::ordered_json::parse(slurp(dir / "pd" / "report.json"));
    CHECK(pr["config"]["array"]["mode"] == "temporal-only");
}

TEST_CASE("field-validate passes on a scaled-down layout") {
    const fs::path dir = scratch("field-verb");
    dump(dir / "cfg.json", nlohmann::ordered_json::parse(R"({
        "field": {
            "pad_um": 24.0, "gap_um": 6.0, "ring_um": 2.0, "rows": 2,
            "cols": 3, "margin_pitches": 1.0, "h_um": 1.0, "write_maps": false
        }
    })"));
    VerbOptions opts;
    opts.config_path = dir / "cfg.json";
    opts.out_dir = dir / "out";
    const RunReport rep = run_verb("field-validate", opts);
    REQUIRE(rep.ok);
    for (const auto& c : rep.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.pass);
    }
    CHECK(fs::exists(dir / "out" / "lumped_vs_field.csv"));
    CHECK(fs::exists(dir / "out" / "distance_sweep.csv"));
    CHECK_FALSE(fs::exists(dir / "out" / "potential_none.csv"));
}

TEST_CASE("config-print echoes every section") {
    const fs::path dir = scratch("cfg-print");
    VerbOptions opts;
    opts.out_dir = dir;
    const RunReport rep = run_verb("config-print", opts);
    REQUIRE(rep.ok);
    const auto doc = nlohmann::ordered_json::parse(slurp(dir / "config.json"));
    for (const char* section : {"device", "array", "fit", "pattern", "readout",
                                "task", "encoding", "schedule", "seizure",
                                "field"}) {
        INFO("section ", section);
        CHECK(doc.contains(section));
    }
}
