#include "negfreq/real_carrier.hpp"

#include "negfreq/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace negfreq {

namespace {

constexpr double kOccupancy = 0.99;

double kaiser_beta(double atten_db) {
    if (atten_db > 50.0) return 0.1102 * (atten_db - 8.7);
    if (atten_db >= 21.0) {
        return 0.5842 * std::pow(atten_db - 21.0, 0.4) + 0.07886 * (atten_db - 21.0);
    }
    return 0.0;
}

std::size_t kaiser_length(const FilterSpec& spec, double sample_rate_hz) {
    const double dw = kTwoPi * spec.transition_hz / sample_rate_hz;
    const double estimate = (spec.stopband_atten_db - 7.95) / (2.285 * dw);
    auto taps = static_cast<std::size_t>(std::ceil(std::max(estimate, 0.0))) + 1;
    if (taps % 2 == 0) ++taps;
    return taps;
}

}  // namespace

FilterSpec FilterSpec::default_for_carrier(double carrier_hz) {
    const double fc = std::abs(carrier_hz);
    return FilterSpec{0.75 * fc, 0.25 * fc, 60.0};
}

void validate(const FilterSpec& spec, double sample_rate_hz) {
    if (!(spec.cutoff_hz > 0.0) || !(spec.transition_hz > 0.0) ||
        !(spec.stopband_atten_db > 0.0)) {
        throw InvalidInput("FilterSpec: cutoff, transition and attenuation must be positive");
    }
    if (!(spec.cutoff_hz + spec.transition_hz < sample_rate_hz / 2.0)) {
        throw InvalidInput("FilterSpec: cutoff_hz + transition_hz must be below fs/2");
    }
    if (spec.transition_hz >= 2.0 * spec.cutoff_hz) {
        throw InvalidInput("FilterSpec: transition band extends below 0 Hz");
    }
    const std::size_t taps = kaiser_length(spec, sample_rate_hz);
    if (taps > kMaxFilterTaps) {
        throw InvalidInput("FilterSpec: transition too narrow, needs " + std::to_string(taps) +
                           " taps (limit " + std::to_string(kMaxFilterTaps) + ")");
    }
}

std::vector<double> design_lowpass(const FilterSpec& spec, double sample_rate_hz) {
    validate(spec, sample_rate_hz);
    const std::size_t n = kaiser_length(spec, sample_rate_hz);
    const double beta = kaiser_beta(spec.stopband_atten_db);
    const double i0_beta = std::cyl_bessel_i(0.0, beta);
    const double fc = spec.cutoff_hz / sample_rate_hz;
    const std::size_t mid = (n - 1) / 2;

    std::vector<double> taps(n);
    for (std::size_t k = 0; k <= mid; ++k) {
        const double m = static_cast<double>(k) - static_cast<double>(mid);
        const double x = kTwoPi * fc * m;
        const double sinc = m == 0.0 ? 2.0 * fc : std::sin(x) / (kPi * m);
        const double r = m / static_cast<double>(mid);
        const double w = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - r * r))) /
                         i0_beta;
        taps[k] = sinc * w;
        taps[n - 1 - k] = taps[k];
    }
    double sum = 0.0;
    for (double t : taps) sum += t;
    for (double& t : taps) t /= sum;
    return taps;
}

double magnitude_response(std::span<const double> taps, double f_hz, double sample_rate_hz) {
    cplx h{0.0, 0.0};
    const double w = kTwoPi * f_hz / sample_rate_hz;
    for (std::size_t k = 0; k < taps.size(); ++k) {
        const double ph = -w * static_cast<double>(k);
        h += taps[k] * cplx{std::cos(ph), std::sin(ph)};
    }
    return std::abs(h);
}

ComplexSignal apply_filter(const ComplexSignal& s, std::span<const double> taps) {
    if (taps.empty()) throw InvalidInput("apply_filter: empty tap set");
    const auto n = static_cast<std::ptrdiff_t>(s.size());
    const auto len = static_cast<std::ptrdiff_t>(taps.size());
    const std::ptrdiff_t delay = (len - 1) / 2;
    const auto x = s.samples();
    std::vector<cplx> out(s.size());
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        // y[k] = sum_j h[j] * x[k + delay - j]
        const std::ptrdiff_t j_lo = std::max<std::ptrdiff_t>(0, k + delay - (n - 1));
        const std::ptrdiff_t j_hi = std::min<std::ptrdiff_t>(len - 1, k + delay);
        cplx acc{0.0, 0.0};
        for (std::ptrdiff_t j = j_lo; j <= j_hi; ++j) {
            acc += taps[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(k + delay - j)];
        }
        out[static_cast<std::size_t>(k)] = acc;
    }
    return s.with_samples(std::move(out))
        .with_edge_transient(std::max(s.edge_transient(), static_cast<std::size_t>(delay)));
}

ComplexSignal real_modulate(const ComplexSignal& bb, const CarrierConfig& carrier) {
    const double fs = bb.sample_rate_hz();
    const double fc = carrier.frequency_hz;
    if (bb.size() >= 2) {
        const auto band = occupied_interval(dft_two_sided(bb), kOccupancy);
        if (!(band.width() < std::abs(fc))) {
            throw InvalidInput("real_modulate: baseband bandwidth " +
                               std::to_string(band.width()) + " Hz must be below |f_c| = " +
                               std::to_string(std::abs(fc)) + " Hz");
        }
        if (!(std::max(std::abs(band.lo_hz + fc), std::abs(band.hi_hz + fc)) < fs / 2.0)) {
            throw InvalidInput("real_modulate: passband exceeds the Nyquist frequency");
        }
    } else if (fc == 0.0) {
        throw InvalidInput("real_modulate: carrier frequency must be nonzero");
    }
    return real_part(multiply(bb, oscillator_like(carrier, bb)));
}

ComplexSignal mix_down(const ComplexSignal& passband, const CarrierConfig& local_oscillator) {
    return multiply(passband, oscillator_like(local_oscillator, passband));
}

ComplexSignal real_demodulate(const ComplexSignal& passband,
                              const CarrierConfig& local_oscillator, const FilterSpec& lpf) {
    for (const auto& x : passband.samples()) {
        if (x.imag() != 0.0) {
            throw InvalidInput("real_demodulate: passband must be real-valued (imag == 0)");
        }
    }
    const double fs = passband.sample_rate_hz();
    validate(lpf, fs);
    const double flo = std::abs(local_oscillator.frequency_hz);
    const auto sp = dft_two_sided(passband);
    const auto band = occupied_interval(sp, kOccupancy, 0.5 * sp.resolution_hz(), fs);
    if (!(lpf.cutoff_hz < 2.0 * flo - band.width())) {
        throw InvalidInput("real_demodulate: cutoff_hz must be below 2|f_lo| - B = " +
                           std::to_string(2.0 * flo - band.width()) + " Hz or the image leaks");
    }
    return apply_filter(mix_down(passband, local_oscillator), design_lowpass(lpf, fs));
}

}  // namespace negfreq
