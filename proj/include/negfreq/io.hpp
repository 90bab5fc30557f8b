// io.hpp - CSV dumps for signals, spectra, polarized pairs and filter taps
//
// Every number is written in the shortest decimal that parses back to the
// same double, so a write/read cycle is exact.
//
//   ComplexSignal  index,t_s,re,im
//   Spectrum       freq_hz,re,im,magnitude,energy
//   PolarizedPair  index,t_s,comp_y,comp_z
//   taps           k,tap

#pragma once

#include "negfreq/polarization.hpp"
#include "negfreq/signal.hpp"
#include "negfreq/spectrum.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace negfreq {

// Thrown for malformed files and I/O failures.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

std::string format_double(double v);
double parse_double(std::string_view text);

inline constexpr std::string_view kSignalHeader = "index,t_s,re,im";
inline constexpr std::string_view kSpectrumHeader = "freq_hz,re,im,magnitude,energy";
inline constexpr std::string_view kPolarizedHeader = "index,t_s,comp_y,comp_z";
inline constexpr std::string_view kTapsHeader = "k,tap";

void write_signal_csv(std::ostream& os, const ComplexSignal& s);
void write_spectrum_csv(std::ostream& os, const Spectrum& sp);
void write_polarized_csv(std::ostream& os, const PolarizedPair& p);
void write_taps_csv(std::ostream& os, std::span<const double> taps);

// Rows of a spectrum dump as stored on disk.
struct SpectrumTable {
    std::vector<double> freq_hz;
    std::vector<cplx> bins;
    std::vector<double> magnitude;
    std::vector<double> energy;
};

// Without an explicit rate the reader infers it from the first and last
// time stamps, which requires at least two rows.
ComplexSignal read_signal_csv(std::istream& is, std::optional<double> sample_rate_hz = {});
SpectrumTable read_spectrum_csv(std::istream& is);
PolarizedPair read_polarized_csv(std::istream& is, std::optional<double> sample_rate_hz = {});
std::vector<double> read_taps_csv(std::istream& is);

// File-path conveniences; throw FormatError when the file cannot be opened.
void save_signal(const std::filesystem::path& path, const ComplexSignal& s);
void save_spectrum(const std::filesystem::path& path, const Spectrum& sp);
void save_polarized(const std::filesystem::path& path, const PolarizedPair& p);
void save_taps(const std::filesystem::path& path, std::span<const double> taps);

ComplexSignal load_signal(const std::filesystem::path& path);
SpectrumTable load_spectrum(const std::filesystem::path& path);
PolarizedPair load_polarized(const std::filesystem::path& path);
std::vector<double> load_taps(const std::filesystem::path& path);

}  // namespace negfreq
