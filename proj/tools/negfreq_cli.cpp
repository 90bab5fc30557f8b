// negfreq - run, list and verify modulation scenarios
//
//   negfreq list
//   negfreq run --scenario <id> [--config <file>] [--out <dir>] [--<key> <value> ...]
//   negfreq verify --out <dir>
//
// run exits 0 when every check passes, 1 when a check fails and 2 for an
// invalid configuration. verify exits 0 only for a consistent, passing run.

#include "negfreq/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

int do_list() {
    for (const auto& info : negfreq::all_scenarios()) {
        std::cout << negfreq::to_string(info.id) << "\t" << info.description << "\n";
    }
    return 0;
}

int do_run(const std::optional<std::string>& config_file,
           const std::map<std::string, std::optional<std::string>>& overrides) {
    negfreq::ScenarioConfig cfg;
    try {
        if (config_file) negfreq::apply_config_file(cfg, *config_file);
        for (const auto& [key, value] : overrides) {
            if (value) negfreq::apply_setting(cfg, key, *value);
        }
        if (cfg.out_dir.empty()) cfg.out_dir = std::filesystem::path("out") /
                                               std::string(negfreq::to_string(cfg.scenario));
        negfreq::validate(cfg);
    } catch (const negfreq::InvalidInput& e) {
        std::cerr << "negfreq: invalid config: " << e.what() << "\n";
        return 2;
    }

    const auto report = negfreq::run_scenario(cfg);
    for (const auto& c : report.checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.measured << " ("
                  << c.threshold.to_text() << ")\n";
    }
    std::cout << "verdict: " << (report.passed() ? "pass" : "fail") << "  ["
              << (cfg.out_dir / negfreq::kReportFile).string() << "]\n";
    return report.passed() ? 0 : 1;
}

int do_verify(const std::string& dir) {
    const auto result = negfreq::verify_run(dir);
    for (const auto& p : result.problems) std::cout << "problem: " << p << "\n";
    std::cout << "verify: " << (result.ok ? "ok" : "failed") << "\n";
    return result.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Real- vs complex-carrier modulation scenarios"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List scenario ids");

    auto* run = app.add_subcommand("run", "Run one scenario and write its artifacts");
    std::optional<std::string> config_file;
    run->add_option("--config", config_file, "Flat key = value config file");
    std::map<std::string, std::optional<std::string>> overrides;
    for (const auto key : negfreq::config_keys()) {
        std::string name = "--" + std::string(key);
        if (key == "out_dir") name = "--out,--out_dir";
        run->add_option(name, overrides[std::string(key)], "Override config key " + std::string(key));
    }

    auto* verify = app.add_subcommand("verify", "Re-check a finished run from its artifacts");
    std::string verify_dir;
    verify->add_option("--out", verify_dir, "Run directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) return do_list();
        if (run->parsed()) return do_run(config_file, overrides);
        if (verify->parsed()) return do_verify(verify_dir);
    } catch (const std::exception& e) {
        std::cerr << "negfreq: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
