// spectrum.hpp - two-sided spectra on a signed frequency axis
//
// The axis runs from -fs/2 (L-band) through 0 to just below +fs/2 (R-band):
// bin m sits at (m - floor(N/2)) * fs / N. Bin amplitudes are DFT sums
// divided by N, so a unit complex tone that falls on a bin reads 1 there.
// Per-bin energy is N*|b_m|^2/fs, and with window=None the bin energies sum
// to the time-domain energy sum |x_k|^2 / fs.

#pragma once

#include "negfreq/signal.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace negfreq {

enum class Window { None, Hann };

class Spectrum {
public:
    Spectrum(std::vector<cplx> bins, double sample_rate_hz, double source_energy);

    std::size_t size() const { return bins_.size(); }
    std::span<const cplx> bins() const { return bins_; }
    const std::vector<double>& freq_axis_hz() const { return freq_; }
    double frequency(std::size_t m) const { return freq_[m]; }
    double sample_rate_hz() const { return sample_rate_hz_; }
    double resolution_hz() const { return sample_rate_hz_ / static_cast<double>(bins_.size()); }
    double source_energy() const { return source_energy_; }

    double bin_energy(std::size_t m) const;
    double total_energy() const;

    // Index of the bin at exactly f, or size() if no bin sits there.
    std::size_t index_of(double f_hz) const;

private:
    std::vector<cplx> bins_;
    std::vector<double> freq_;
    double sample_rate_hz_;
    double source_energy_;
};

// Throws InvalidInput for fewer than two samples. Hann output is scaled by
// the window's RMS so broadband energy is preserved on average.
Spectrum dft_two_sided(const ComplexSignal& s, Window window = Window::None);

// Energy of bins with f_lo <= f < f_hi. Throws InvalidInput unless f_lo < f_hi.
double band_energy(const Spectrum& sp, double f_lo_hz, double f_hi_hz);

struct BandEnergyReport {
    double l_band = 0.0;
    double r_band = 0.0;
    double dc = 0.0;
    double total = 0.0;
    double l_fraction = 0.0;
    double r_fraction = 0.0;
};

// Throws InvalidInput for an all-zero spectrum.
BandEnergyReport band_report(const Spectrum& sp);

// Signed frequency of the strongest bin. Bins within 1e-12 relative of the
// maximum are ties, resolved toward smaller |f| and then toward negative f.
double peak_frequency(const Spectrum& sp);

struct FrequencyInterval {
    double lo_hz = 0.0;
    double hi_hz = 0.0;
    double width() const { return hi_hz - lo_hz; }
};

// Interval between the (1-fraction)/2 and (1+fraction)/2 cumulative energy
// quantiles of the bins with f_lo <= f < f_hi, expressed as bin-edge
// frequencies. Defaults cover the whole axis. Throws InvalidInput if the
// selected bins carry no energy.
FrequencyInterval occupied_interval(const Spectrum& sp, double fraction = 0.99);
FrequencyInterval occupied_interval(const Spectrum& sp, double fraction, double f_lo_hz,
                                    double f_hi_hz);

// Largest |S(-f) - conj(S(f))| over mirrored bin pairs, relative to the
// largest bin magnitude. Zero for real-valued signals.
double conjugate_symmetry_error(const Spectrum& sp);

// |sum_f S(-f) * S(f)| / sqrt(sum |S(-f)|^2 * sum |S(f)|^2) over mirrored
// pairs with f > 0: the normalised correlation between the L-band bins and
// the conjugated mirror image of the R-band bins. Exactly 1 for real signals.
double mirror_correlation(const Spectrum& sp);

}  // namespace negfreq
