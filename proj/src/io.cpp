#include "negfreq/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

namespace negfreq {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

// Reads the header and then every data row, checking the column count.
template <typename RowFn>
void read_rows(std::istream& is, std::string_view header, RowFn on_row) {
    std::string line;
    if (!std::getline(is, line) || strip_cr(line) != header) {
        throw FormatError("expected CSV header '" + std::string(header) + "'");
    }
    const std::size_t columns = split_commas(header).size();
    std::size_t row = 0;
    while (std::getline(is, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_commas(line);
        if (fields.size() != columns) {
            throw FormatError("row " + std::to_string(row) + ": expected " +
                              std::to_string(columns) + " columns");
        }
        on_row(fields, row);
        ++row;
    }
}

std::size_t parse_index(std::string_view text) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw FormatError("invalid index '" + std::string(text) + "'");
    }
    return v;
}

double infer_rate(const std::vector<double>& t, std::optional<double> given) {
    if (given) return *given;
    if (t.size() < 2) throw FormatError("cannot infer sample rate from fewer than two rows");
    const double span = t.back() - t.front();
    if (!(span > 0.0)) throw FormatError("time stamps must increase");
    return static_cast<double>(t.size() - 1) / span;
}

template <typename Writer>
void save_with(const std::filesystem::path& path, Writer w) {
    std::ofstream os(path);
    if (!os) throw FormatError("cannot open '" + path.string() + "' for writing");
    w(os);
    if (!os) throw FormatError("write to '" + path.string() + "' failed");
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open '" + path.string() + "'");
    return is;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw FormatError("number formatting failed");
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw FormatError("invalid number '" + std::string(text) + "'");
    }
    return v;
}

void write_signal_csv(std::ostream& os, const ComplexSignal& s) {
    os << kSignalHeader << '\n';
    for (std::size_t k = 0; k < s.size(); ++k) {
        os << k << ',' << format_double(s.time_at(k)) << ',' << format_double(s[k].real()) << ','
           << format_double(s[k].imag()) << '\n';
    }
}

void write_spectrum_csv(std::ostream& os, const Spectrum& sp) {
    os << kSpectrumHeader << '\n';
    for (std::size_t m = 0; m < sp.size(); ++m) {
        const cplx b = sp.bins()[m];
        os << format_double(sp.frequency(m)) << ',' << format_double(b.real()) << ','
           << format_double(b.imag()) << ',' << format_double(std::abs(b)) << ','
           << format_double(sp.bin_energy(m)) << '\n';
    }
}

void write_polarized_csv(std::ostream& os, const PolarizedPair& p) {
    os << kPolarizedHeader << '\n';
    for (std::size_t k = 0; k < p.size(); ++k) {
        os << k << ',' << format_double(p.time_at(k)) << ',' << format_double(p.comp_y()[k])
           << ',' << format_double(p.comp_z()[k]) << '\n';
    }
}

void write_taps_csv(std::ostream& os, std::span<const double> taps) {
    os << kTapsHeader << '\n';
    for (std::size_t k = 0; k < taps.size(); ++k) os << k << ',' << format_double(taps[k]) << '\n';
}

ComplexSignal read_signal_csv(std::istream& is, std::optional<double> sample_rate_hz) {
    std::vector<double> t;
    std::vector<cplx> x;
    read_rows(is, kSignalHeader, [&](const auto& f, std::size_t row) {
        if (parse_index(f[0]) != row) throw FormatError("index column out of sequence");
        t.push_back(parse_double(f[1]));
        x.emplace_back(parse_double(f[2]), parse_double(f[3]));
    });
    if (x.empty()) throw FormatError("signal CSV has no rows");
    const double fs = infer_rate(t, sample_rate_hz);
    return ComplexSignal(std::move(x), fs, t.front());
}

SpectrumTable read_spectrum_csv(std::istream& is) {
    SpectrumTable table;
    read_rows(is, kSpectrumHeader, [&](const auto& f, std::size_t) {
        table.freq_hz.push_back(parse_double(f[0]));
        table.bins.emplace_back(parse_double(f[1]), parse_double(f[2]));
        table.magnitude.push_back(parse_double(f[3]));
        table.energy.push_back(parse_double(f[4]));
    });
    if (table.freq_hz.size() < 2) throw FormatError("spectrum CSV needs at least two rows");
    for (std::size_t m = 1; m < table.freq_hz.size(); ++m) {
        if (!(table.freq_hz[m] > table.freq_hz[m - 1])) {
            throw FormatError("spectrum frequency axis must be strictly ascending");
        }
    }
    return table;
}

PolarizedPair read_polarized_csv(std::istream& is, std::optional<double> sample_rate_hz) {
    std::vector<double> t, y, z;
    read_rows(is, kPolarizedHeader, [&](const auto& f, std::size_t row) {
        if (parse_index(f[0]) != row) throw FormatError("index column out of sequence");
        t.push_back(parse_double(f[1]));
        y.push_back(parse_double(f[2]));
        z.push_back(parse_double(f[3]));
    });
    if (y.empty()) throw FormatError("polarized CSV has no rows");
    const double fs = infer_rate(t, sample_rate_hz);
    return PolarizedPair(std::move(y), std::move(z), fs, t.front());
}

std::vector<double> read_taps_csv(std::istream& is) {
    std::vector<double> taps;
    read_rows(is, kTapsHeader, [&](const auto& f, std::size_t row) {
        if (parse_index(f[0]) != row) throw FormatError("k column out of sequence");
        taps.push_back(parse_double(f[1]));
    });
    if (taps.empty()) throw FormatError("taps CSV has no rows");
    return taps;
}

void save_signal(const std::filesystem::path& path, const ComplexSignal& s) {
    save_with(path, [&](std::ostream& os) { write_signal_csv(os, s); });
}
void save_spectrum(const std::filesystem::path& path, const Spectrum& sp) {
    save_with(path, [&](std::ostream& os) { write_spectrum_csv(os, sp); });
}
void save_polarized(const std::filesystem::path& path, const PolarizedPair& p) {
    save_with(path, [&](std::ostream& os) { write_polarized_csv(os, p); });
}
void save_taps(const std::filesystem::path& path, std::span<const double> taps) {
    save_with(path, [&](std::ostream& os) { write_taps_csv(os, taps); });
}

ComplexSignal load_signal(const std::filesystem::path& path) {
    auto is = open_for_read(path);
    return read_signal_csv(is);
}
SpectrumTable load_spectrum(const std::filesystem::path& path) {
    auto is = open_for_read(path);
    return read_spectrum_csv(is);
}
PolarizedPair load_polarized(const std::filesystem::path& path) {
    auto is = open_for_read(path);
    return read_polarized_csv(is);
}
std::vector<double> load_taps(const std::filesystem::path& path) {
    auto is = open_for_read(path);
    return read_taps_csv(is);
}

}  // namespace negfreq
