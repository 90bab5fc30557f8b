// signal.hpp - complex sampled signals, oscillators and pointwise algebra
//
// Every chain in the library passes ComplexSignal values around. Samples are
// double-precision complex numbers on a uniform time grid
//     t_k = t0_s + k / sample_rate_hz
// and every operation here is a pure function of its inputs.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace negfreq {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Thrown whenever an argument violates a documented precondition.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

class ComplexSignal {
public:
    // Throws InvalidInput if samples is empty, a sample is not finite or the
    // rate is not positive.
    ComplexSignal(std::vector<cplx> samples, double sample_rate_hz, double t0_s = 0.0);

    static ComplexSignal zeros(std::size_t n, double sample_rate_hz, double t0_s = 0.0);
    static ComplexSignal constant(cplx value, std::size_t n, double sample_rate_hz,
                                  double t0_s = 0.0);

    std::size_t size() const { return samples_.size(); }
    double sample_rate_hz() const { return sample_rate_hz_; }
    double t0_s() const { return t0_s_; }
    double time_at(std::size_t k) const {
        return t0_s_ + static_cast<double>(k) / sample_rate_hz_;
    }

    std::span<const cplx> samples() const { return samples_; }
    const cplx& operator[](std::size_t k) const { return samples_[k]; }

    // Number of samples at each end that are filter transients. Elementwise
    // operations propagate the larger of their operands' counts.
    std::size_t edge_transient() const { return edge_transient_; }
    ComplexSignal with_edge_transient(std::size_t n) const;

    // Same grid, different samples (length must match).
    ComplexSignal with_samples(std::vector<cplx> samples) const;

    bool same_grid(const ComplexSignal& other) const;
    bool operator==(const ComplexSignal& other) const = default;

private:
    std::vector<cplx> samples_;
    double sample_rate_hz_;
    double t0_s_;
    std::size_t edge_transient_ = 0;
};

// A complex exponential carrier. The sign of frequency_hz selects the
// rotation sense: negative is the L-frequency (clockwise), positive the
// R-frequency (counterclockwise).
struct CarrierConfig {
    double frequency_hz = 0.0;
    double initial_phase_rad = 0.0;

    // The carrier that undoes this one: negated frequency and phase.
    CarrierConfig conjugate() const { return {-frequency_hz, -initial_phase_rad}; }
};

// Sample k is exp(i*(2*pi*f*t_k + phase)). Throws InvalidInput if n == 0 or
// |f| >= fs/2.
ComplexSignal oscillator(const CarrierConfig& carrier, std::size_t n, double sample_rate_hz,
                         double t0_s = 0.0);

// Oscillator on the grid of an existing signal.
ComplexSignal oscillator_like(const CarrierConfig& carrier, const ComplexSignal& grid);

ComplexSignal conjugate(const ComplexSignal& s);
ComplexSignal real_part(const ComplexSignal& s);
ComplexSignal scale(const ComplexSignal& s, cplx c);

// Elementwise binary operations. Throw InvalidInput on mismatched grids.
ComplexSignal multiply(const ComplexSignal& a, const ComplexSignal& b);
ComplexSignal add(const ComplexSignal& a, const ComplexSignal& b);
ComplexSignal subtract(const ComplexSignal& a, const ComplexSignal& b);

// Sum of |x_k|^2 / fs.
double energy(const ComplexSignal& s);
double energy(std::span<const cplx> samples, double sample_rate_hz);

// Largest per-sample modulus of a - b.
double max_abs_diff(const ComplexSignal& a, const ComplexSignal& b);
double peak_magnitude(const ComplexSignal& s);

// Samples with the leading and trailing `edge` samples removed.
ComplexSignal trim(const ComplexSignal& s, std::size_t edge);
// trim() by the signal's own edge_transient().
ComplexSignal steady_state(const ComplexSignal& s);

}  // namespace negfreq
