#include "negfreq/signal.hpp"

#include <algorithm>
#include <cmath>

namespace negfreq {

namespace {

void require_same_grid(const ComplexSignal& a, const ComplexSignal& b, const char* op) {
    if (!a.same_grid(b)) {
        throw InvalidInput(std::string(op) +
                           ": operands differ in length, sample rate or start time");
    }
}

template <typename F>
ComplexSignal zip(const ComplexSignal& a, const ComplexSignal& b, const char* op, F f) {
    require_same_grid(a, b, op);
    std::vector<cplx> out(a.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = f(a[k], b[k]);
    return a.with_samples(std::move(out))
        .with_edge_transient(std::max(a.edge_transient(), b.edge_transient()));
}

template <typename F>
ComplexSignal map(const ComplexSignal& s, F f) {
    std::vector<cplx> out(s.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = f(s[k]);
    return s.with_samples(std::move(out));
}

}  // namespace

ComplexSignal::ComplexSignal(std::vector<cplx> samples, double sample_rate_hz, double t0_s)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz), t0_s_(t0_s) {
    if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
        throw InvalidInput("ComplexSignal: sample_rate_hz must be positive and finite");
    }
    if (!std::isfinite(t0_s_)) throw InvalidInput("ComplexSignal: t0_s must be finite");
    if (samples_.empty()) throw InvalidInput("ComplexSignal: at least one sample required");
    for (const auto& x : samples_) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
            throw InvalidInput("ComplexSignal: non-finite sample");
        }
    }
}

ComplexSignal ComplexSignal::zeros(std::size_t n, double sample_rate_hz, double t0_s) {
    return constant(cplx{0.0, 0.0}, n, sample_rate_hz, t0_s);
}

ComplexSignal ComplexSignal::constant(cplx value, std::size_t n, double sample_rate_hz,
                                      double t0_s) {
    return ComplexSignal(std::vector<cplx>(n, value), sample_rate_hz, t0_s);
}

ComplexSignal ComplexSignal::with_edge_transient(std::size_t n) const {
    ComplexSignal copy = *this;
    copy.edge_transient_ = n;
    return copy;
}

ComplexSignal ComplexSignal::with_samples(std::vector<cplx> samples) const {
    if (samples.size() != samples_.size()) {
        throw InvalidInput("with_samples: length mismatch");
    }
    ComplexSignal out(std::move(samples), sample_rate_hz_, t0_s_);
    out.edge_transient_ = edge_transient_;
    return out;
}

bool ComplexSignal::same_grid(const ComplexSignal& other) const {
    return samples_.size() == other.samples_.size() && sample_rate_hz_ == other.sample_rate_hz_ &&
           t0_s_ == other.t0_s_;
}

ComplexSignal oscillator(const CarrierConfig& carrier, std::size_t n, double sample_rate_hz,
                         double t0_s) {
    if (n == 0) throw InvalidInput("oscillator: n must be at least 1");
    if (!(sample_rate_hz > 0.0)) throw InvalidInput("oscillator: sample rate must be positive");
    if (!std::isfinite(carrier.frequency_hz) || !std::isfinite(carrier.initial_phase_rad)) {
        throw InvalidInput("oscillator: non-finite carrier parameters");
    }
    if (std::abs(carrier.frequency_hz) >= sample_rate_hz / 2.0) {
        throw InvalidInput("oscillator: |frequency_hz| must be below sample_rate_hz/2");
    }

    // Phase is accumulated in cycles and reduced to [-1/2, 1/2] before the
    // multiplication by 2*pi, so long signals keep full precision. The
    // reduction is odd-symmetric, which makes oscillator(-f) the exact
    // conjugate of oscillator(f). The fma recovers the rounding error of the
    // product so the reduced phase is accurate to a few ulps of 1/2.
    const double cycles_per_sample = carrier.frequency_hz / sample_rate_hz;
    const double start_cycles = carrier.frequency_hz * t0_s;
    const double start_frac = start_cycles - std::round(start_cycles);
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double cycles = cycles_per_sample * kd;
        const double rounding = std::fma(cycles_per_sample, kd, -cycles);
        const double frac = (cycles - std::round(cycles)) + rounding;
        const double phase = kTwoPi * (frac + start_frac) + carrier.initial_phase_rad;
        out[k] = cplx{std::cos(phase), std::sin(phase)};
    }
    return ComplexSignal(std::move(out), sample_rate_hz, t0_s);
}

ComplexSignal oscillator_like(const CarrierConfig& carrier, const ComplexSignal& grid) {
    return oscillator(carrier, grid.size(), grid.sample_rate_hz(), grid.t0_s());
}

ComplexSignal conjugate(const ComplexSignal& s) {
    return map(s, [](cplx x) { return std::conj(x); });
}

ComplexSignal real_part(const ComplexSignal& s) {
    return map(s, [](cplx x) { return cplx{x.real(), 0.0}; });
}

ComplexSignal scale(const ComplexSignal& s, cplx c) {
    return map(s, [c](cplx x) { return x * c; });
}

ComplexSignal multiply(const ComplexSignal& a, const ComplexSignal& b) {
    return zip(a, b, "multiply", [](cplx x, cplx y) { return x * y; });
}

ComplexSignal add(const ComplexSignal& a, const ComplexSignal& b) {
    return zip(a, b, "add", [](cplx x, cplx y) { return x + y; });
}

ComplexSignal subtract(const ComplexSignal& a, const ComplexSignal& b) {
    return zip(a, b, "subtract", [](cplx x, cplx y) { return x - y; });
}

double energy(std::span<const cplx> samples, double sample_rate_hz) {
    double sum = 0.0;
    for (const auto& x : samples) sum += x.real() * x.real() + x.imag() * x.imag();
    return sum / sample_rate_hz;
}

double energy(const ComplexSignal& s) { return energy(s.samples(), s.sample_rate_hz()); }

double max_abs_diff(const ComplexSignal& a, const ComplexSignal& b) {
    if (a.size() != b.size()) throw InvalidInput("max_abs_diff: length mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

double peak_magnitude(const ComplexSignal& s) {
    double peak = 0.0;
    for (const auto& x : s.samples()) peak = std::max(peak, std::abs(x));
    return peak;
}

ComplexSignal trim(const ComplexSignal& s, std::size_t edge) {
    if (2 * edge >= s.size()) throw InvalidInput("trim: edge removes the whole signal");
    auto view = s.samples();
    std::vector<cplx> kept(view.begin() + static_cast<std::ptrdiff_t>(edge),
                           view.end() - static_cast<std::ptrdiff_t>(edge));
    ComplexSignal out(std::move(kept), s.sample_rate_hz(), s.time_at(edge));
    return out.with_edge_transient(s.edge_transient() > edge ? s.edge_transient() - edge : 0);
}

ComplexSignal steady_state(const ComplexSignal& s) { return trim(s, s.edge_transient()); }

}  // namespace negfreq
