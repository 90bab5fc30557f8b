#include "negfreq/experiment.hpp"
#include "negfreq/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace negfreq {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

double report_number(std::string_view text) {
    const auto t = trim(text);
    if (t == "inf") return INFINITY;
    if (t == "-inf") return -INFINITY;
    try {
        return parse_double(t);
    } catch (const FormatError&) {
        throw InvalidInput("report: '" + std::string(t) + "' is not a number");
    }
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

bool close_rel(double a, double b, double tol) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= tol * scale;
}

}  // namespace

bool Threshold::admits(double m) const {
    switch (op) {
        case Op::Less: return m < a;
        case Op::LessEq: return m <= a;
        case Op::Greater: return m > a;
        case Op::GreaterEq: return m >= a;
        case Op::Equal: return m == a;
        case Op::Within: return m >= a && m <= b;
    }
    return false;
}

std::string Threshold::to_text() const {
    switch (op) {
        case Op::Less: return "< " + format_double(a);
        case Op::LessEq: return "<= " + format_double(a);
        case Op::Greater: return "> " + format_double(a);
        case Op::GreaterEq: return ">= " + format_double(a);
        case Op::Equal: return "== " + format_double(a);
        case Op::Within: return "in [" + format_double(a) + ", " + format_double(b) + "]";
    }
    return "?";
}

Threshold Threshold::parse(std::string_view text) {
    const auto t = trim(text);
    if (starts_with(t, "in [")) {
        const auto close = t.find(']');
        const auto comma = t.find(',');
        if (close == std::string_view::npos || comma == std::string_view::npos || comma > close) {
            throw InvalidInput("threshold: malformed interval '" + std::string(t) + "'");
        }
        return within(report_number(t.substr(4, comma - 4)),
                      report_number(t.substr(comma + 1, close - comma - 1)));
    }
    struct Prefix {
        std::string_view text;
        Op op;
    };
    // Two-character operators first so "<=" is not read as "<".
    constexpr Prefix prefixes[] = {{"<=", Op::LessEq},   {">=", Op::GreaterEq},
                                   {"==", Op::Equal},    {"<", Op::Less},
                                   {">", Op::Greater}};
    for (const auto& p : prefixes) {
        if (starts_with(t, p.text)) return {p.op, report_number(t.substr(p.text.size())), 0.0};
    }
    throw InvalidInput("threshold: unrecognised operator in '" + std::string(t) + "'");
}

bool RunReport::passed() const {
    if (checks.empty()) return false;
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

const Check* RunReport::find_check(std::string_view name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

std::optional<std::string> RunReport::find_entry(std::string_view key) const {
    for (const auto& [k, v] : entries) {
        if (k == key) return v;
    }
    return std::nullopt;
}

std::string RunReport::to_text() const {
    std::ostringstream os;
    os << "scenario: " << to_string(scenario) << '\n';
    os << "digest: " << hex64(digest) << '\n';
    for (const auto& [k, v] : config) os << "config." << k << ": " << v << '\n';
    for (const auto& [file, schema] : artifacts) os << "artifact." << file << ": " << schema << '\n';
    for (const auto& [k, v] : entries) os << k << ": " << v << '\n';
    for (const auto& c : checks) {
        os << "check." << c.name << ": " << format_double(c.measured) << " / "
           << c.threshold.to_text() << " / " << (c.pass ? "pass" : "fail") << '\n';
    }
    os << "verdict: " << (passed() ? "pass" : "fail") << '\n';
    return os.str();
}

RunReport RunReport::parse(std::string_view text) {
    RunReport r;
    bool have_scenario = false;
    bool have_verdict = false;
    std::string verdict;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        const auto line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (line.empty()) continue;
        if (have_verdict) throw InvalidInput("report: content after the verdict line");
        const auto colon = line.find(": ");
        if (colon == std::string_view::npos) {
            throw InvalidInput("report line " + std::to_string(line_no) + ": expected 'key: value'");
        }
        const auto key = line.substr(0, colon);
        const auto value = trim(line.substr(colon + 2));
        if (key == "scenario") {
            r.scenario = scenario_from_string(value);
            have_scenario = true;
        } else if (key == "digest") {
            r.digest = std::stoull(std::string(value), nullptr, 16);
        } else if (starts_with(key, "config.")) {
            r.config.emplace_back(std::string(key.substr(7)), std::string(value));
        } else if (starts_with(key, "artifact.")) {
            r.artifacts.emplace_back(std::string(key.substr(9)), std::string(value));
        } else if (starts_with(key, "check.")) {
            const auto s1 = value.find(" / ");
            const auto s2 = value.rfind(" / ");
            if (s1 == std::string_view::npos || s1 == s2) {
                throw InvalidInput("report line " + std::to_string(line_no) +
                                   ": check needs 'measured / threshold / pass|fail'");
            }
            Check c;
            c.name = std::string(key.substr(6));
            c.measured = report_number(value.substr(0, s1));
            c.threshold = Threshold::parse(value.substr(s1 + 3, s2 - s1 - 3));
            const auto outcome = trim(value.substr(s2 + 3));
            if (outcome != "pass" && outcome != "fail") {
                throw InvalidInput("report line " + std::to_string(line_no) +
                                   ": outcome must be pass or fail");
            }
            c.pass = outcome == "pass";
            r.checks.push_back(std::move(c));
        } else if (key == "verdict") {
            verdict = std::string(value);
            have_verdict = true;
        } else {
            r.entries.emplace_back(std::string(key), std::string(value));
        }
    }
    if (!have_scenario) throw InvalidInput("report: missing scenario line");
    if (!have_verdict) throw InvalidInput("report: missing verdict line");
    if (verdict != "pass" && verdict != "fail") throw InvalidInput("report: bad verdict value");
    if ((verdict == "pass") != r.passed()) {
        throw InvalidInput("report: verdict line disagrees with the recorded checks");
    }
    return r;
}

VerifyResult verify_run(const std::filesystem::path& dir) {
    VerifyResult result;
    auto& problems = result.problems;

    RunReport report;
    {
        std::ifstream is(dir / kReportFile);
        if (!is) {
            problems.push_back("missing " + (dir / kReportFile).string());
            return result;
        }
        std::ostringstream buf;
        buf << is.rdbuf();
        try {
            report = RunReport::parse(buf.str());
        } catch (const std::exception& e) {
            problems.push_back(e.what());
            return result;
        }
    }

    for (const auto& [file, schema] : report.artifacts) {
        const auto path = dir / file;
        if (!std::filesystem::exists(path)) {
            problems.push_back("artifact missing: " + file);
            continue;
        }
        try {
            if (schema == "signal") {
                load_signal(path);
            } else if (schema == "polarized") {
                load_polarized(path);
            } else if (schema == "taps") {
                load_taps(path);
            } else if (schema == "spectrum") {
                const auto table = load_spectrum(path);
                const std::string stem = file.substr(0, file.find('.'));
                double l = 0.0, r = 0.0, dc = 0.0;
                for (std::size_t m = 0; m < table.freq_hz.size(); ++m) {
                    const double f = table.freq_hz[m];
                    (f < 0.0 ? l : f > 0.0 ? r : dc) += table.energy[m];
                }
                const double total = l + r + dc;
                const std::pair<const char*, double> recomputed[] = {
                    {"l_band", l}, {"r_band", r}, {"dc", dc}, {"total", total},
                    {"l_fraction", total > 0.0 ? l / total : 0.0},
                    {"r_fraction", total > 0.0 ? r / total : 0.0}};
                for (const auto& [name, value] : recomputed) {
                    const auto key = "band." + stem + "." + name;
                    const auto recorded = report.find_entry(key);
                    if (!recorded) continue;
                    const double rec = report_number(*recorded);
                    const bool fraction = std::string_view(name).ends_with("fraction");
                    const bool ok = fraction ? std::abs(rec - value) <= 1e-9
                                             : close_rel(rec, value, 1e-9);
                    if (!ok) {
                        problems.push_back(key + ": report says " + *recorded +
                                           ", spectrum dump gives " + format_double(value));
                    }
                }
                if (const auto e = report.find_entry("energy." + stem)) {
                    if (!close_rel(report_number(*e), total, 1e-9)) {
                        problems.push_back("energy." + stem + " disagrees with the spectrum dump");
                    }
                }
            } else {
                problems.push_back("artifact " + file + ": unknown schema '" + schema + "'");
            }
        } catch (const std::exception& e) {
            problems.push_back("artifact " + file + ": " + e.what());
        }
    }

    for (const auto& c : report.checks) {
        if (c.threshold.admits(c.measured) != c.pass) {
            problems.push_back("check." + c.name + ": recorded outcome contradicts its threshold");
        }
        if (!c.pass) problems.push_back("check." + c.name + " failed");
    }

    result.ok = problems.empty() && report.passed();
    return result;
}

}  // namespace negfreq
