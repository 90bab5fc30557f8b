// real_carrier.hpp - conventional real-carrier modulation and demodulation
//
// Transmit: Re{bb * exp(i*2*pi*fc*t)}. The real output carries bb/2 on one
// band and conj(bb)/2 on the mirrored band. Receive: multiply by a local
// complex oscillator and low-pass filter away the image that lands at
// twice the carrier frequency.

#pragma once

#include "negfreq/signal.hpp"

#include <span>
#include <vector>

namespace negfreq {

// Windowed-sinc low-pass. cutoff_hz is the half-amplitude point; the
// transition band of width transition_hz is centred on it.
struct FilterSpec {
    double cutoff_hz = 0.0;
    double transition_hz = 0.0;
    double stopband_atten_db = 60.0;

    // 0.75*fc cutoff, 0.25*fc transition, 60 dB.
    static FilterSpec default_for_carrier(double carrier_hz);

    double passband_edge_hz() const { return cutoff_hz - 0.5 * transition_hz; }
    double stopband_edge_hz() const { return cutoff_hz + 0.5 * transition_hz; }
};

constexpr std::size_t kMaxFilterTaps = 4097;

// Throws InvalidInput if cutoff + transition >= fs/2, a field is not positive
// or the design would need more than kMaxFilterTaps taps.
void validate(const FilterSpec& spec, double sample_rate_hz);

// Kaiser-windowed sinc; odd length, symmetric, taps sum to 1.
std::vector<double> design_lowpass(const FilterSpec& spec, double sample_rate_hz);

// |H(f)| of a real FIR, evaluated directly from the taps.
double magnitude_response(std::span<const double> taps, double f_hz, double sample_rate_hz);

// Same-length convolution shifted by (taps-1)/2 samples so the output is
// aligned with the input. The result's edge_transient() is at least
// (taps-1)/2.
ComplexSignal apply_filter(const ComplexSignal& s, std::span<const double> taps);

// Re{bb * oscillator(carrier)}. A negative carrier frequency gives the
// L-carrier variant. Throws InvalidInput if the measured baseband bandwidth
// is not below |fc| or the passband would cross fs/2.
ComplexSignal real_modulate(const ComplexSignal& bb, const CarrierConfig& carrier);

// passband * oscillator(local_oscillator), before any filtering.
ComplexSignal mix_down(const ComplexSignal& passband, const CarrierConfig& local_oscillator);

// Filtered mix_down(). With the conjugate of the transmit carrier as the
// local oscillator the steady-state output is bb/2; with the transmit
// carrier itself it is conj(bb)/2. Throws InvalidInput if the passband has a
// nonzero imaginary part or if cutoff >= 2|f_lo| - B, B being the measured
// one-band bandwidth of the passband.
ComplexSignal real_demodulate(const ComplexSignal& passband,
                              const CarrierConfig& local_oscillator, const FilterSpec& lpf);

}  // namespace negfreq
