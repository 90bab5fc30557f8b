#include "negfreq/polarization.hpp"

#include "negfreq/spectrum.hpp"
#include "negfreq/symbols.hpp"

#include <cmath>

namespace negfreq {

PolarizedPair::PolarizedPair(std::vector<double> comp_y, std::vector<double> comp_z,
                             double sample_rate_hz, double t0_s)
    : comp_y_(std::move(comp_y)), comp_z_(std::move(comp_z)), sample_rate_hz_(sample_rate_hz),
      t0_s_(t0_s) {
    if (comp_y_.size() != comp_z_.size()) {
        throw InvalidInput("PolarizedPair: components differ in length");
    }
    if (comp_y_.empty()) throw InvalidInput("PolarizedPair: at least one sample required");
    if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
        throw InvalidInput("PolarizedPair: sample_rate_hz must be positive and finite");
    }
    for (std::size_t k = 0; k < comp_y_.size(); ++k) {
        if (!std::isfinite(comp_y_[k]) || !std::isfinite(comp_z_[k])) {
            throw InvalidInput("PolarizedPair: non-finite component value");
        }
    }
}

void validate(const ChannelConfig& ch) {
    if (!(ch.noise_sigma >= 0.0) || !std::isfinite(ch.noise_sigma)) {
        throw InvalidInput("ChannelConfig: noise_sigma must be finite and >= 0");
    }
    if (!(ch.crosstalk >= 0.0 && ch.crosstalk < 1.0)) {
        throw InvalidInput("ChannelConfig: crosstalk must lie in [0, 1)");
    }
}

PolarizedPair to_polarized(const ComplexSignal& s) {
    std::vector<double> y(s.size());
    std::vector<double> z(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        y[k] = s[k].real();
        z[k] = s[k].imag();
    }
    return PolarizedPair(std::move(y), std::move(z), s.sample_rate_hz(), s.t0_s());
}

ComplexSignal from_polarized(const PolarizedPair& p) {
    std::vector<cplx> out(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) out[k] = cplx{p.comp_y()[k], p.comp_z()[k]};
    return ComplexSignal(std::move(out), p.sample_rate_hz(), p.t0_s());
}

double energy(const PolarizedPair& p) {
    double sum = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        sum += p.comp_y()[k] * p.comp_y()[k] + p.comp_z()[k] * p.comp_z()[k];
    }
    return sum / p.sample_rate_hz();
}

PolarizedPair transmit(const PolarizedPair& p, const ChannelConfig& ch) {
    validate(ch);
    const double keep = 1.0 - ch.crosstalk;
    const double leak = ch.crosstalk;
    Rng rng(ch.seed);
    std::vector<double> y(p.size());
    std::vector<double> z(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double yk = p.comp_y()[k];
        const double zk = p.comp_z()[k];
        y[k] = keep * yk + leak * zk;
        z[k] = keep * zk + leak * yk;
        if (ch.noise_sigma > 0.0) {
            const auto [ny, nz] = normal_pair(rng);
            y[k] += ch.noise_sigma * ny;
            z[k] += ch.noise_sigma * nz;
        }
    }
    return PolarizedPair(std::move(y), std::move(z), p.sample_rate_hz(), p.t0_s());
}

std::string_view to_string(Handedness h) {
    switch (h) {
        case Handedness::L: return "L";
        case Handedness::R: return "R";
        case Handedness::Linear: return "linear";
    }
    return "?";
}

Handedness detect_handedness(const PolarizedPair& p) {
    if (!(energy(p) > 0.0)) throw InvalidInput("detect_handedness: all-zero field");
    if (p.size() < 2) throw InvalidInput("detect_handedness: at least two samples required");
    const auto report = band_report(dft_two_sided(from_polarized(p)));
    if (report.r_fraction > kHandednessThreshold) return Handedness::R;
    if (report.l_fraction > kHandednessThreshold) return Handedness::L;
    return Handedness::Linear;
}

}  // namespace negfreq
