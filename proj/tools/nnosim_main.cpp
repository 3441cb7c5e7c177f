// Command-line front end: one subcommand per experiment verb.  Every run
// writes <out>/report.json and exits 0 only when the verb succeeded and all
// of its checks passed.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nnosim/csv.hpp"
#include "nnosim/verbs.hpp"
#include "nnosim/version.hpp"

namespace {

struct SubArgs {
    CLI::App* cmd = nullptr;
    std::string config;
    std::string out = "out";
    std::string mode;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* mode_opt = nullptr;
};

const char* describe(const std::string& verb) {
    if (verb == "device-fit") return "Pulse-pair calibration: decay-constant fit and interval sweep";
    if (verb == "pattern-demo") return "5x5 glyph recognition on a 6-node row with a quantized crossbar readout";
    if (verb == "classify") return "Spike-train benchmark across array modes and sampling counts";
    if (verb == "seizure-demo") return "Binary early-warning benchmark over horizon windows";
    if (verb == "field-validate") return "2-D potential-field cross-check of the lumped coupling model";
    if (verb == "gen-data") return "Write both synthetic datasets to disk";
    if (verb == "config-print") return "Resolve and print the full configuration";
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hydrogen-cloud device array simulator"};
    app.set_version_flag("--version", std::string(nnosim::kVersion));
    app.require_subcommand(1);

    std::vector<SubArgs> subs(nnosim::verb_names().size());
    for (std::size_t k = 0; k < nnosim::verb_names().size(); ++k) {
        const std::string& name = nnosim::verb_names()[k];
        SubArgs& s = subs[k];
        s.cmd = app.add_subcommand(name, describe(name));
        s.cmd->add_option("--config", s.config, "Config file (JSON); omit for defaults")
            ->check(CLI::ExistingFile);
        s.cmd->add_option("--out", s.out, "Output directory")->capture_default_str();
        s.seed_opt = s.cmd->add_option("--seed", s.seed, "Override the run's seed keys");
        s.mode_opt = s.cmd->add_option("--mode", s.mode,
                                       "Override the array mode selection "
                                       "(spatiotemporal | temporal-only | bypass)");
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t k = 0; k < subs.size(); ++k) {
        if (!subs[k].cmd->parsed()) continue;
        nnosim::VerbOptions opts;
        opts.config_path = subs[k].config;
        opts.out_dir = subs[k].out;
        if (*subs[k].seed_opt) opts.seed = subs[k].seed;
        if (*subs[k].mode_opt) opts.mode = subs[k].mode;

        const nnosim::RunReport rep = nnosim::run_verb(nnosim::verb_names()[k], opts);
        for (const auto& c : rep.checks) {
            std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
            if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
            std::cout << "\n";
        }
        if (!rep.error.empty()) std::cerr << "error: " << rep.error << "\n";
        if (rep.verb == "config-print" && rep.ok) {
            std::cout << nnosim::read_text_file(opts.out_dir / "config.json");
        }
        std::cout << "report: " << (opts.out_dir / "report.json").string() << "\n";
        return rep.ok ? 0 : 1;
    }
    return 1;
}
