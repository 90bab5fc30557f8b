// Shared oracles and generators for the unit tests.
#pragma once

#include "negfreq/signal.hpp"
#include "negfreq/symbols.hpp"

#include <cmath>
#include <vector>

namespace testing {

using negfreq::cplx;
using negfreq::ComplexSignal;

// O(N^2) DFT with the library's normalisation and axis order, evaluated
// in long double so it can serve as the reference for the FFT path.
inline std::vector<cplx> naive_dft(const ComplexSignal& s) {
    const std::size_t n = s.size();
    const std::size_t half = n / 2;
    std::vector<cplx> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        const long long bin = static_cast<long long>(m) - static_cast<long long>(half);
        std::complex<long double> acc{0.0L, 0.0L};
        for (std::size_t k = 0; k < n; ++k) {
            const long long prod = (bin * static_cast<long long>(k)) % static_cast<long long>(n);
            const long double ang = -2.0L * 3.14159265358979323846264338327950288L *
                                    static_cast<long double>(prod) / static_cast<long double>(n);
            const auto x = s[k];
            acc += std::complex<long double>(x.real(), x.imag()) *
                   std::complex<long double>(std::cos(ang), std::sin(ang));
        }
        acc /= static_cast<long double>(n);
        out[m] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    }
    return out;
}

// White complex Gaussian samples.
inline ComplexSignal random_signal(negfreq::Rng& rng, std::size_t n, double fs, double t0 = 0.0) {
    std::vector<cplx> x(n);
    for (auto& v : x) {
        const auto [a, b] = negfreq::normal_pair(rng);
        v = {a, b};
    }
    return ComplexSignal(std::move(x), fs, t0);
}

inline ComplexSignal random_real_signal(negfreq::Rng& rng, std::size_t n, double fs) {
    std::vector<cplx> x(n);
    for (auto& v : x) v = {negfreq::normal_pair(rng).first, 0.0};
    return ComplexSignal(std::move(x), fs);
}

// Unit-peak sum of a few random tones confined to |f| < fs * spread / 2.
inline ComplexSignal random_narrowband(negfreq::Rng& rng, std::size_t n, double fs,
                                       double spread = 0.125) {
    auto s = ComplexSignal::zeros(n, fs);
    for (int j = 0; j < 4; ++j) {
        const double f = (negfreq::uniform01(rng) - 0.5) * fs * spread;
        const auto [re, im] = negfreq::normal_pair(rng);
        s = negfreq::add(s, negfreq::scale(negfreq::oscillator(
                                               {f, negfreq::kTwoPi * negfreq::uniform01(rng)}, n, fs),
                                           cplx{re, im}));
    }
    return negfreq::scale(s, 1.0 / negfreq::peak_magnitude(s));
}

// Shaped random QPSK baseband: 64 symbols at fs/64 symbol rate.
inline ComplexSignal shaped_baseband(std::uint64_t seed, std::size_t n = 4096, double fs = 4096.0,
                                     double rolloff = 0.25) {
    const std::size_t sps = 64;
    const auto msg = negfreq::SymbolStream::random(negfreq::Constellation::QPSK, n / sps, seed);
    return negfreq::generate_baseband(msg, sps, negfreq::PulseShape::raised_cosine(rolloff), fs);
}

}  // namespace testing
