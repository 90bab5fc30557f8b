#include "negfreq/symbols.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace negfreq {

namespace {

const std::array<cplx, 4> kQpsk = [] {
    const double a = 1.0 / std::sqrt(2.0);
    return std::array<cplx, 4>{cplx{a, a}, cplx{-a, a}, cplx{-a, -a}, cplx{a, -a}};
}();

// Row-major 4x4 grid. Symbols are drawn by index, so no bit mapping.
const std::array<cplx, 16> kQam16 = [] {
    const double levels[4] = {-3.0, -1.0, 1.0, 3.0};
    const double norm = 1.0 / std::sqrt(10.0);
    std::array<cplx, 16> pts{};
    for (int i = 0; i < 4; ++i) {
        for (int q = 0; q < 4; ++q) pts[4 * i + q] = cplx{levels[i] * norm, levels[q] * norm};
    }
    return pts;
}();

}  // namespace

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::pair<double, double> normal_pair(Rng& rng) {
    // 1 - u lies in (0, 1], so the log is finite.
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

std::string_view to_string(Constellation c) {
    switch (c) {
        case Constellation::QPSK: return "QPSK";
        case Constellation::QAM16: return "QAM16";
    }
    return "?";
}

Constellation constellation_from_string(std::string_view name) {
    if (name == "QPSK" || name == "qpsk") return Constellation::QPSK;
    if (name == "QAM16" || name == "qam16") return Constellation::QAM16;
    throw InvalidInput("unknown constellation '" + std::string(name) + "'");
}

std::span<const cplx> constellation_points(Constellation c) {
    if (c == Constellation::QAM16) return kQam16;
    return kQpsk;
}

SymbolStream::SymbolStream(std::vector<cplx> symbols, Constellation constellation,
                           std::uint64_t seed)
    : symbols_(std::move(symbols)), constellation_(constellation), seed_(seed) {
    const auto points = constellation_points(constellation_);
    for (const auto& s : symbols_) {
        bool member = false;
        for (const auto& p : points) member = member || s == p;
        if (!member) throw InvalidInput("SymbolStream: symbol outside the constellation");
    }
}

SymbolStream SymbolStream::random(Constellation constellation, std::size_t count,
                                  std::uint64_t seed) {
    const auto points = constellation_points(constellation);
    const int bits = constellation == Constellation::QPSK ? 2 : 4;
    Rng rng(seed);
    std::vector<cplx> symbols(count);
    for (auto& s : symbols) s = points[rng() >> (64 - bits)];
    return SymbolStream(std::move(symbols), constellation, seed);
}

std::vector<double> raised_cosine_pulse(double rolloff, std::size_t samples_per_symbol) {
    if (!(rolloff >= 0.0 && rolloff <= 1.0)) {
        throw InvalidInput("raised_cosine_pulse: rolloff must lie in [0, 1]");
    }
    if (samples_per_symbol == 0) throw InvalidInput("raised_cosine_pulse: sps must be >= 1");
    constexpr std::size_t kSpanSymbols = 8;
    const std::size_t half = kSpanSymbols * samples_per_symbol;
    std::vector<double> taps(2 * half + 1);
    const double sps = static_cast<double>(samples_per_symbol);
    for (std::size_t j = 0; j < taps.size(); ++j) {
        const double t = (static_cast<double>(j) - static_cast<double>(half)) / sps;
        const double sinc = t == 0.0 ? 1.0 : std::sin(kPi * t) / (kPi * t);
        const double denom = 1.0 - (2.0 * rolloff * t) * (2.0 * rolloff * t);
        double value;
        if (std::abs(denom) < 1e-12) {
            // Limit at t = +-1/(2*rolloff).
            value = (kPi / 4.0) * std::sin(kPi / (2.0 * rolloff)) / (kPi / (2.0 * rolloff));
        } else {
            value = sinc * std::cos(kPi * rolloff * t) / denom;
        }
        taps[j] = value;
    }
    return taps;
}

ComplexSignal generate_baseband(const SymbolStream& msg, std::size_t samples_per_symbol,
                                const PulseShape& shaping, double sample_rate_hz) {
    if (samples_per_symbol == 0) throw InvalidInput("generate_baseband: sps must be >= 1");
    if (msg.size() == 0) throw InvalidInput("generate_baseband: empty symbol stream");
    const std::size_t n = msg.size() * samples_per_symbol;
    std::vector<cplx> out(n, cplx{0.0, 0.0});
    const auto symbols = msg.symbols();

    if (shaping.kind == PulseShape::Kind::Rectangular) {
        for (std::size_t k = 0; k < n; ++k) out[k] = symbols[k / samples_per_symbol];
        return ComplexSignal(std::move(out), sample_rate_hz);
    }

    const auto pulse = raised_cosine_pulse(shaping.rolloff, samples_per_symbol);
    const auto half = static_cast<std::ptrdiff_t>(pulse.size() / 2);
    const auto len = static_cast<std::ptrdiff_t>(n);
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        const auto centre = static_cast<std::ptrdiff_t>(s * samples_per_symbol);
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, centre - half);
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(len - 1, centre + half);
        for (std::ptrdiff_t k = lo; k <= hi; ++k) {
            out[static_cast<std::size_t>(k)] +=
                symbols[s] * pulse[static_cast<std::size_t>(k - centre + half)];
        }
    }
    return ComplexSignal(std::move(out), sample_rate_hz);
}

}  // namespace negfreq
