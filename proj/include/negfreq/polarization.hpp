// polarization.hpp - complex signals as two orthogonal real field components
//
// A complex sample y + i*z is sent as a transverse field with component y
// along one axis and z along the orthogonal one. A counterclockwise phasor
// (R-frequency) is then a right-hand circularly polarised wave, a clockwise
// one (L-frequency) left-hand, and a real signal is linearly polarised.

#pragma once

#include "negfreq/signal.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace negfreq {

class PolarizedPair {
public:
    // Throws InvalidInput on unequal or empty components, non-finite values
    // or a non-positive rate.
    PolarizedPair(std::vector<double> comp_y, std::vector<double> comp_z, double sample_rate_hz,
                  double t0_s = 0.0);

    std::size_t size() const { return comp_y_.size(); }
    const std::vector<double>& comp_y() const { return comp_y_; }
    const std::vector<double>& comp_z() const { return comp_z_; }
    double sample_rate_hz() const { return sample_rate_hz_; }
    double t0_s() const { return t0_s_; }
    double time_at(std::size_t k) const {
        return t0_s_ + static_cast<double>(k) / sample_rate_hz_;
    }

    bool operator==(const PolarizedPair&) const = default;

private:
    std::vector<double> comp_y_;
    std::vector<double> comp_z_;
    double sample_rate_hz_;
    double t0_s_;
};

struct ChannelConfig {
    double noise_sigma = 0.0;  // per-component additive Gaussian std
    double crosstalk = 0.0;    // in [0, 1)
    std::uint64_t seed = 0;
};

void validate(const ChannelConfig& ch);

PolarizedPair to_polarized(const ComplexSignal& s);
ComplexSignal from_polarized(const PolarizedPair& p);

// Sum of (y^2 + z^2) / fs.
double energy(const PolarizedPair& p);

// y' = (1-c)*y + c*z + n_y,  z' = (1-c)*z + c*y + n_z. Noise draws come from
// Rng(seed) as (n_y, n_z) pairs, sample by sample.
PolarizedPair transmit(const PolarizedPair& p, const ChannelConfig& ch);

enum class Handedness { L, R, Linear };

std::string_view to_string(Handedness h);

// R if the R-band holds more than kHandednessThreshold of the energy, L for
// the L-band, otherwise Linear. Throws InvalidInput for an all-zero pair.
constexpr double kHandednessThreshold = 0.9;
Handedness detect_handedness(const PolarizedPair& p);

}  // namespace negfreq
