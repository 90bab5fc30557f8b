// experiment.hpp - named scenarios, run reports and artifact verification
//
// A scenario builds one of the modulation chains from a ScenarioConfig,
// writes spectrum/signal/taps CSVs for each stage into out_dir, and returns
// a RunReport of measured values and pass/fail checks.
//
// Config files are flat `key = value` text with `#` comments. Report files
// are `key: value` lines in a fixed order:
//
//   scenario: fig4
//   digest: 5f1c0e3a9b7d2468          FNV-1a 64 of the canonical config
//   config.<key>: <value>             canonical config, sorted by key
//   artifact.<file>: <schema>         signal | spectrum | polarized | taps
//   <group>.<name>: <value>           band.*, energy.*, evm.* and others
//   check.<name>: <measured> / <threshold> / pass|fail
//   verdict: pass|fail
//
// Thresholds read `< x`, `<= x`, `> x`, `>= x`, `== x` or `in [a, b]`.

#pragma once

#include "negfreq/polarization.hpp"
#include "negfreq/real_carrier.hpp"
#include "negfreq/symbols.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace negfreq {

enum class ScenarioId { Fig4, Fig5, Fig6, Fig7, Fig9, Fig10, GroupLaws, Compare, Polarization };

std::string_view to_string(ScenarioId id);
ScenarioId scenario_from_string(std::string_view name);

struct ScenarioInfo {
    ScenarioId id;
    std::string_view description;
};
std::span<const ScenarioInfo> all_scenarios();

struct ScenarioConfig {
    ScenarioId scenario = ScenarioId::Fig4;
    double sample_rate_hz = 65536.0;
    std::size_t n_samples = 65536;
    double f_c_hz = 8192.0;
    double symbol_rate_hz = 1024.0;
    Constellation constellation = Constellation::QPSK;
    std::uint64_t seed = 42;
    double rolloff = 0.25;
    double guard_hz = 512.0;
    // Unset fields of the filter fall back to FilterSpec::default_for_carrier(f_c_hz).
    std::optional<double> filter_cutoff_hz;
    std::optional<double> filter_transition_hz;
    double filter_stopband_atten_db = 60.0;
    ChannelConfig channel{0.05, 0.01, 7};
    std::size_t trials = 100;
    std::filesystem::path out_dir;

    FilterSpec filter() const;
    std::size_t samples_per_symbol() const;
    std::size_t n_symbols() const;
};

// Names accepted by apply_setting(), in canonical order.
std::span<const std::string_view> config_keys();

// Throws InvalidInput for an unknown key or an unparsable value.
void apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value);

// Parses `key = value` lines. Throws InvalidInput naming the offending line.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);
void apply_config_text(ScenarioConfig& cfg, std::string_view text);
void apply_config_file(ScenarioConfig& cfg, const std::filesystem::path& path);

// Throws InvalidInput naming the first violated invariant.
void validate(const ScenarioConfig& cfg);

// Sorted key/value pairs, excluding out_dir.
std::vector<std::pair<std::string, std::string>> canonical_config(const ScenarioConfig& cfg);
std::uint64_t config_digest(const ScenarioConfig& cfg);
std::uint64_t fnv1a64(std::string_view bytes);

struct Threshold {
    enum class Op { Less, LessEq, Greater, GreaterEq, Equal, Within };
    Op op = Op::Less;
    double a = 0.0;
    double b = 0.0;

    static Threshold less(double x) { return {Op::Less, x, 0.0}; }
    static Threshold less_eq(double x) { return {Op::LessEq, x, 0.0}; }
    static Threshold greater(double x) { return {Op::Greater, x, 0.0}; }
    static Threshold greater_eq(double x) { return {Op::GreaterEq, x, 0.0}; }
    static Threshold equal(double x) { return {Op::Equal, x, 0.0}; }
    static Threshold within(double lo, double hi) { return {Op::Within, lo, hi}; }

    bool admits(double measured) const;
    std::string to_text() const;
    // Throws InvalidInput for malformed text.
    static Threshold parse(std::string_view text);
};

struct Check {
    std::string name;
    double measured = 0.0;
    Threshold threshold;
    bool pass = false;
};

struct RunReport {
    ScenarioId scenario = ScenarioId::Fig4;
    std::uint64_t digest = 0;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::pair<std::string, std::string>> artifacts;  // file name, schema
    std::vector<std::pair<std::string, std::string>> entries;
    std::vector<Check> checks;

    bool passed() const;
    const Check* find_check(std::string_view name) const;
    std::optional<std::string> find_entry(std::string_view key) const;

    std::string to_text() const;
    // Throws InvalidInput for malformed reports.
    static RunReport parse(std::string_view text);
};

inline constexpr std::string_view kReportFile = "report.txt";

// Builds the configured chain. When cfg.out_dir is non-empty the directory
// is created and every declared artifact plus report.txt is written there.
// Throws InvalidInput for an invalid config.
RunReport run_scenario(const ScenarioConfig& cfg);

// The real-carrier vs dual complex-carrier comparison (scenario `compare`).
RunReport compare_chains(const ScenarioConfig& cfg);

struct VerifyResult {
    bool ok = false;
    std::vector<std::string> problems;
};

// Re-reads report.txt in `dir`, checks that each artifact exists and parses
// under its schema, recomputes band energies and fractions from spectrum
// dumps, and re-evaluates every check against its threshold.
VerifyResult verify_run(const std::filesystem::path& dir);

}  // namespace negfreq
