#include "negfreq/complex_carrier.hpp"

#include "negfreq/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace negfreq {

namespace {

constexpr double kOccupancy = 0.99;
constexpr double kEmptyBand = 0.01;

// Occupied interval, or nothing for a silent (or single-sample) signal.
std::optional<FrequencyInterval> occupied_band(const ComplexSignal& s) {
    if (s.size() < 2 || !(energy(s) > 0.0)) return std::nullopt;
    return occupied_interval(dft_two_sided(s), kOccupancy);
}

void require_within_nyquist(const ComplexSignal& s, double delta_hz, const char* op) {
    const double nyquist = s.sample_rate_hz() / 2.0;
    if (!(std::abs(delta_hz) < nyquist)) {
        throw InvalidInput(std::string(op) + ": |shift| must be below fs/2");
    }
    if (const auto band = occupied_band(s)) {
        const double lo = band->lo_hz + delta_hz;
        const double hi = band->hi_hz + delta_hz;
        if (!(lo > -nyquist && hi < nyquist)) {
            throw InvalidInput(std::string(op) + ": shifted content [" + std::to_string(lo) +
                               ", " + std::to_string(hi) + "] Hz leaves the Nyquist range");
        }
    }
}

}  // namespace

ComplexSignal band_move(const ComplexSignal& s, double delta_hz) {
    require_within_nyquist(s, delta_hz, "band_move");
    return multiply(s, oscillator_like(CarrierConfig{delta_hz, 0.0}, s));
}

ComplexSignal complex_modulate(const ComplexSignal& bb, const CarrierConfig& carrier) {
    require_within_nyquist(bb, carrier.frequency_hz, "complex_modulate");
    return multiply(bb, oscillator_like(carrier, bb));
}

ComplexSignal complex_demodulate(const ComplexSignal& cb, const CarrierConfig& carrier) {
    return multiply(cb, oscillator_like(carrier.conjugate(), cb));
}

ComplexSignal dual_modulate(const DualMessage& msg, double f_c) {
    if (!(f_c > 0.0)) throw InvalidInput("dual_modulate: f_c must be positive");
    if (!(msg.guard_hz >= 0.0)) throw InvalidInput("dual_modulate: guard_hz must be >= 0");
    if (!msg.stream_a.same_grid(msg.stream_b)) {
        throw InvalidInput("dual_modulate: streams must share length, rate and start time");
    }
    for (const auto* stream : {&msg.stream_a, &msg.stream_b}) {
        if (const auto band = occupied_band(*stream)) {
            if (band->width() + 2.0 * msg.guard_hz > 2.0 * f_c) {
                throw InvalidInput("dual_modulate: stream bandwidth " +
                                   std::to_string(band->width()) + " Hz plus guard exceeds 2*f_c");
            }
        }
    }
    return add(complex_modulate(msg.stream_a, CarrierConfig{-f_c, 0.0}),
               complex_modulate(msg.stream_b, CarrierConfig{+f_c, 0.0}));
}

DualStreams dual_demodulate(const ComplexSignal& cb, double f_c, const FilterSpec& lpf) {
    if (!(f_c > 0.0)) throw InvalidInput("dual_demodulate: f_c must be positive");
    const double fs = cb.sample_rate_hz();
    validate(lpf, fs);
    double bandwidth = 0.0;
    if (cb.size() >= 2) {
        const auto sp = dft_two_sided(cb);
        const double half_bin = 0.5 * sp.resolution_hz();
        const double l_band = band_energy(sp, -fs, -half_bin);
        const double r_band = band_energy(sp, half_bin, fs);
        // A band below kEmptyBand of the total is edge leakage, not content.
        const double floor = kEmptyBand * sp.total_energy();
        if (l_band > floor) {
            bandwidth = std::max(bandwidth,
                                 occupied_interval(sp, kOccupancy, -fs, -half_bin).width());
        }
        if (r_band > floor) {
            bandwidth = std::max(bandwidth,
                                 occupied_interval(sp, kOccupancy, half_bin, fs).width());
        }
    }
    if (lpf.cutoff_hz + lpf.transition_hz > 2.0 * f_c - bandwidth) {
        throw InvalidInput("dual_demodulate: cutoff_hz + transition_hz must not exceed "
                           "2*f_c - B = " + std::to_string(2.0 * f_c - bandwidth) + " Hz");
    }
    const auto taps = design_lowpass(lpf, fs);
    return DualStreams{apply_filter(band_move(cb, +f_c), taps),
                       apply_filter(band_move(cb, -f_c), taps)};
}

double evm_db(const ComplexSignal& recovered, const ComplexSignal& reference) {
    if (recovered.size() != reference.size()) throw InvalidInput("evm_db: length mismatch");
    const std::size_t edge = recovered.edge_transient();
    if (2 * edge >= recovered.size()) throw InvalidInput("evm_db: no steady-state samples");
    double err = 0.0;
    double ref = 0.0;
    for (std::size_t k = edge; k + edge < recovered.size(); ++k) {
        err += std::norm(recovered[k] - reference[k]);
        ref += std::norm(reference[k]);
    }
    if (!(ref > 0.0)) throw InvalidInput("evm_db: reference has no energy");
    return 10.0 * std::log10(err / ref);
}

}  // namespace negfreq
