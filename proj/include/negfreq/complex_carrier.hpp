// complex_carrier.hpp - complex-carrier modulation and the band-move transform
//
// Complex-carrier modulation transmits the full product bb * exp(i*w*t)
// instead of its real part, so the baseband lands on exactly one band:
// the L-band for a negative carrier frequency, the R-band for a positive
// one. Demodulating with the conjugate carrier restores bb exactly, with no
// filter. Two independent streams can share one carrier magnitude, one on
// each band.

#pragma once

#include "negfreq/real_carrier.hpp"
#include "negfreq/signal.hpp"

#include <utility>

namespace negfreq {

// s * exp(i*2*pi*delta*t). Throws InvalidInput if the shifted occupied band
// of s would reach +-fs/2.
ComplexSignal band_move(const ComplexSignal& s, double delta_hz);

// bb * oscillator(carrier). Same Nyquist check as band_move.
ComplexSignal complex_modulate(const ComplexSignal& bb, const CarrierConfig& carrier);

// cb * oscillator(carrier.conjugate()); exact inverse of complex_modulate.
ComplexSignal complex_demodulate(const ComplexSignal& cb, const CarrierConfig& carrier);

// Stream A rides the L-band (-f_c), stream B the R-band (+f_c).
struct DualMessage {
    ComplexSignal stream_a;
    ComplexSignal stream_b;
    double guard_hz = 0.0;
};

// Throws InvalidInput if the streams do not share a grid, f_c <= 0, or a
// stream's bandwidth plus 2*guard exceeds 2*f_c.
ComplexSignal dual_modulate(const DualMessage& msg, double f_c);

struct DualStreams {
    ComplexSignal stream_a;
    ComplexSignal stream_b;
};

// Band-moves each band to DC and low-pass filters it. Throws InvalidInput
// if cutoff + transition > 2*f_c - B, B being the wider measured band.
DualStreams dual_demodulate(const ComplexSignal& cb, double f_c, const FilterSpec& lpf);

// 10*log10(sum |recovered - reference|^2 / sum |reference|^2), computed over
// the samples outside recovered.edge_transient() at each end.
double evm_db(const ComplexSignal& recovered, const ComplexSignal& reference);

}  // namespace negfreq
