// symbols.hpp - seeded constellation symbols and baseband pulse shaping

#pragma once

#include "negfreq/signal.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace negfreq {

// The one random engine used across the library. std::mt19937_64 has a
// fully specified output sequence, and every draw below is derived from raw
// 64-bit outputs (never from std:: distributions, whose algorithms are
// implementation-defined), so results are identical on every platform.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Rng& rng);
// Pair of independent standard normals (Box-Muller).
std::pair<double, double> normal_pair(Rng& rng);

enum class Constellation { QPSK, QAM16 };

std::string_view to_string(Constellation c);
Constellation constellation_from_string(std::string_view name);

// Unit average power point set in index order.
std::span<const cplx> constellation_points(Constellation c);

class SymbolStream {
public:
    // Throws InvalidInput if any symbol is not a point of the constellation.
    SymbolStream(std::vector<cplx> symbols, Constellation constellation, std::uint64_t seed);

    // `count` uniform draws from the constellation.
    static SymbolStream random(Constellation constellation, std::size_t count,
                               std::uint64_t seed);

    std::span<const cplx> symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    Constellation constellation() const { return constellation_; }
    std::uint64_t seed() const { return seed_; }

private:
    std::vector<cplx> symbols_;
    Constellation constellation_;
    std::uint64_t seed_;
};

struct PulseShape {
    enum class Kind { Rectangular, RaisedCosine };
    Kind kind = Kind::Rectangular;
    double rolloff = 0.0;

    static PulseShape rectangular() { return {Kind::Rectangular, 0.0}; }
    static PulseShape raised_cosine(double rolloff) { return {Kind::RaisedCosine, rolloff}; }
};

// Raised-cosine pulse sampled at samples_per_symbol, truncated to +-8 symbol
// periods, peak 1 at the centre tap.
std::vector<double> raised_cosine_pulse(double rolloff, std::size_t samples_per_symbol);

// Symbol k is centred on sample k*samples_per_symbol (raised cosine) or held
// for samples [k*sps, (k+1)*sps) (rectangular). Output length is
// size()*samples_per_symbol.
ComplexSignal generate_baseband(const SymbolStream& msg, std::size_t samples_per_symbol,
                                const PulseShape& shaping, double sample_rate_hz);

}  // namespace negfreq
