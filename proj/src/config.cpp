#include "negfreq/experiment.hpp"
#include "negfreq/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace negfreq {

namespace {

constexpr std::array<ScenarioInfo, 9> kScenarios{{
    {ScenarioId::Fig4, "real-carrier modulation: baseband and two-band passband spectra"},
    {ScenarioId::Fig5, "real-carrier demodulation: mixed spectrum with 2fc image, filtered output"},
    {ScenarioId::Fig6, "L-complex modulation: single L-band occupancy"},
    {ScenarioId::Fig7, "dual-stream modulation: stream A on the L-band, stream B on the R-band"},
    {ScenarioId::Fig9, "complex-carrier round trip without filtering"},
    {ScenarioId::Fig10, "dual-stream demodulation: both streams recovered separately"},
    {ScenarioId::GroupLaws, "randomised band-move additivity, commutativity, identity, inverse"},
    {ScenarioId::Compare, "energy and EVM ledger: real chain vs dual complex chain"},
    {ScenarioId::Polarization, "circular/linear polarization round trip through a noisy channel"},
}};

constexpr std::array<std::string_view, 17> kKeys{
    "channel_seed",
    "constellation",
    "crosstalk",
    "f_c_hz",
    "filter_cutoff_hz",
    "filter_stopband_atten_db",
    "filter_transition_hz",
    "guard_hz",
    "n_samples",
    "noise_sigma",
    "out_dir",
    "rolloff",
    "sample_rate_hz",
    "scenario",
    "seed",
    "symbol_rate_hz",
    "trials",
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double number(std::string_view key, std::string_view value) {
    try {
        return parse_double(value);
    } catch (const FormatError&) {
        throw InvalidInput("config key '" + std::string(key) + "': '" + std::string(value) +
                           "' is not a number");
    }
}

std::uint64_t unsigned_int(std::string_view key, std::string_view value) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw InvalidInput("config key '" + std::string(key) + "': '" + std::string(value) +
                           "' is not a non-negative integer");
    }
    return v;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

std::string_view to_string(ScenarioId id) {
    switch (id) {
        case ScenarioId::Fig4: return "fig4";
        case ScenarioId::Fig5: return "fig5";
        case ScenarioId::Fig6: return "fig6";
        case ScenarioId::Fig7: return "fig7";
        case ScenarioId::Fig9: return "fig9";
        case ScenarioId::Fig10: return "fig10";
        case ScenarioId::GroupLaws: return "group_laws";
        case ScenarioId::Compare: return "compare";
        case ScenarioId::Polarization: return "polarization";
    }
    return "?";
}

ScenarioId scenario_from_string(std::string_view name) {
    for (const auto& info : kScenarios) {
        if (to_string(info.id) == name) return info.id;
    }
    throw InvalidInput("unknown scenario '" + std::string(name) + "'");
}

std::span<const ScenarioInfo> all_scenarios() { return kScenarios; }

FilterSpec ScenarioConfig::filter() const {
    FilterSpec spec = FilterSpec::default_for_carrier(f_c_hz);
    if (filter_cutoff_hz) spec.cutoff_hz = *filter_cutoff_hz;
    if (filter_transition_hz) spec.transition_hz = *filter_transition_hz;
    spec.stopband_atten_db = filter_stopband_atten_db;
    return spec;
}

std::size_t ScenarioConfig::samples_per_symbol() const {
    if (!(symbol_rate_hz > 0.0)) return 0;
    const double sps = sample_rate_hz / symbol_rate_hz;
    if (sps < 1.0 || sps != std::floor(sps)) return 0;
    return static_cast<std::size_t>(sps);
}

std::size_t ScenarioConfig::n_symbols() const {
    const std::size_t sps = samples_per_symbol();
    return sps == 0 ? 0 : n_samples / sps;
}

std::span<const std::string_view> config_keys() { return kKeys; }

void apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view raw) {
    const std::string_view value = trim(raw);
    if (key == "scenario") {
        cfg.scenario = scenario_from_string(value);
    } else if (key == "sample_rate_hz") {
        cfg.sample_rate_hz = number(key, value);
    } else if (key == "n_samples") {
        cfg.n_samples = unsigned_int(key, value);
    } else if (key == "f_c_hz") {
        cfg.f_c_hz = number(key, value);
    } else if (key == "symbol_rate_hz") {
        cfg.symbol_rate_hz = number(key, value);
    } else if (key == "constellation") {
        cfg.constellation = constellation_from_string(value);
    } else if (key == "seed") {
        cfg.seed = unsigned_int(key, value);
    } else if (key == "rolloff") {
        cfg.rolloff = number(key, value);
    } else if (key == "guard_hz") {
        cfg.guard_hz = number(key, value);
    } else if (key == "filter_cutoff_hz") {
        cfg.filter_cutoff_hz = number(key, value);
    } else if (key == "filter_transition_hz") {
        cfg.filter_transition_hz = number(key, value);
    } else if (key == "filter_stopband_atten_db") {
        cfg.filter_stopband_atten_db = number(key, value);
    } else if (key == "noise_sigma") {
        cfg.channel.noise_sigma = number(key, value);
    } else if (key == "crosstalk") {
        cfg.channel.crosstalk = number(key, value);
    } else if (key == "channel_seed") {
        cfg.channel.seed = unsigned_int(key, value);
    } else if (key == "trials") {
        cfg.trials = unsigned_int(key, value);
    } else if (key == "out_dir") {
        cfg.out_dir = std::filesystem::path(std::string(value));
    } else {
        throw InvalidInput("unknown config key '" + std::string(key) + "'");
    }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw InvalidInput("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw InvalidInput("config line " + std::to_string(line_no) + ": empty key");
        }
        out.emplace_back(std::string(key), std::string(value));
    }
    return out;
}

void apply_config_text(ScenarioConfig& cfg, std::string_view text) {
    for (const auto& [key, value] : parse_config_text(text)) apply_setting(cfg, key, value);
}

void apply_config_file(ScenarioConfig& cfg, const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw InvalidInput("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    apply_config_text(cfg, buf.str());
}

void validate(const ScenarioConfig& cfg) {
    if (!(cfg.sample_rate_hz > 0.0) || !std::isfinite(cfg.sample_rate_hz)) {
        throw InvalidInput("sample_rate_hz must be positive");
    }
    if (!is_power_of_two(cfg.n_samples)) throw InvalidInput("n_samples must be a power of two");
    if (!(cfg.symbol_rate_hz > 0.0)) throw InvalidInput("symbol_rate_hz must be positive");
    if (cfg.samples_per_symbol() == 0) {
        throw InvalidInput("sample_rate_hz / symbol_rate_hz must be an integer >= 1");
    }
    if (cfg.n_symbols() == 0) {
        throw InvalidInput("message has zero symbols: n_samples < samples per symbol");
    }
    if (cfg.n_samples % cfg.samples_per_symbol() != 0) {
        throw InvalidInput("n_samples must be a multiple of the samples per symbol");
    }
    if (!(cfg.f_c_hz > 0.0)) throw InvalidInput("f_c_hz must be positive");
    if (!(cfg.f_c_hz >= 4.0 * cfg.symbol_rate_hz)) {
        throw InvalidInput("f_c_hz must be at least 4 * symbol_rate_hz");
    }
    if (!(2.0 * cfg.f_c_hz < cfg.sample_rate_hz / 2.0)) {
        throw InvalidInput("f_c_hz must be below sample_rate_hz / 4 (2fc image within Nyquist)");
    }
    if (!(cfg.rolloff >= 0.0 && cfg.rolloff <= 1.0)) {
        throw InvalidInput("rolloff must lie in [0, 1]");
    }
    if (!(cfg.guard_hz >= 0.0)) throw InvalidInput("guard_hz must be >= 0");
    if (cfg.trials == 0) throw InvalidInput("trials must be >= 1");
    validate(cfg.filter(), cfg.sample_rate_hz);
    validate(cfg.channel);
}

std::vector<std::pair<std::string, std::string>> canonical_config(const ScenarioConfig& cfg) {
    const FilterSpec f = cfg.filter();
    std::vector<std::pair<std::string, std::string>> out{
        {"channel_seed", std::to_string(cfg.channel.seed)},
        {"constellation", std::string(to_string(cfg.constellation))},
        {"crosstalk", format_double(cfg.channel.crosstalk)},
        {"f_c_hz", format_double(cfg.f_c_hz)},
        {"filter_cutoff_hz", format_double(f.cutoff_hz)},
        {"filter_stopband_atten_db", format_double(f.stopband_atten_db)},
        {"filter_transition_hz", format_double(f.transition_hz)},
        {"guard_hz", format_double(cfg.guard_hz)},
        {"n_samples", std::to_string(cfg.n_samples)},
        {"noise_sigma", format_double(cfg.channel.noise_sigma)},
        {"rolloff", format_double(cfg.rolloff)},
        {"sample_rate_hz", format_double(cfg.sample_rate_hz)},
        {"scenario", std::string(to_string(cfg.scenario))},
        {"seed", std::to_string(cfg.seed)},
        {"symbol_rate_hz", format_double(cfg.symbol_rate_hz)},
        {"trials", std::to_string(cfg.trials)},
    };
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t config_digest(const ScenarioConfig& cfg) {
    std::string text;
    for (const auto& [key, value] : canonical_config(cfg)) text += key + "=" + value + "\n";
    return fnv1a64(text);
}

}  // namespace negfreq
