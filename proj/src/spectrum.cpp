#include "negfreq/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

namespace negfreq {

namespace {

// FFTW's planner is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex, FftwFree>;

FftwBuffer fftw_buffer(std::size_t n) {
    auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (p == nullptr) throw std::bad_alloc();
    return FftwBuffer(p);
}

// Forward DFT X_m = sum_k x_k exp(-2*pi*i*m*k/N), FFT order.
std::vector<cplx> forward_dft(std::span<const cplx> x) {
    const std::size_t n = x.size();
    // fftw_malloc guarantees SIMD alignment, so the codelets chosen do not
    // depend on where the allocator happened to put the data.
    auto in = fftw_buffer(n);
    auto out = fftw_buffer(n);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    for (std::size_t k = 0; k < n; ++k) {
        in.get()[k][0] = x[k].real();
        in.get()[k][1] = x[k].imag();
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    std::vector<cplx> result(n);
    for (std::size_t k = 0; k < n; ++k) result[k] = cplx{out.get()[k][0], out.get()[k][1]};
    return result;
}

double norm2(cplx x) { return x.real() * x.real() + x.imag() * x.imag(); }

}  // namespace

Spectrum::Spectrum(std::vector<cplx> bins, double sample_rate_hz, double source_energy)
    : bins_(std::move(bins)), sample_rate_hz_(sample_rate_hz), source_energy_(source_energy) {
    if (bins_.size() < 2) throw InvalidInput("Spectrum: at least two bins required");
    if (!(sample_rate_hz_ > 0.0)) throw InvalidInput("Spectrum: sample rate must be positive");
    const auto n = static_cast<std::ptrdiff_t>(bins_.size());
    const std::ptrdiff_t half = n / 2;
    freq_.resize(bins_.size());
    for (std::ptrdiff_t m = 0; m < n; ++m) {
        freq_[static_cast<std::size_t>(m)] =
            static_cast<double>(m - half) * sample_rate_hz_ / static_cast<double>(n);
    }
}

double Spectrum::bin_energy(std::size_t m) const {
    return static_cast<double>(bins_.size()) * norm2(bins_[m]) / sample_rate_hz_;
}

double Spectrum::total_energy() const {
    double sum = 0.0;
    for (std::size_t m = 0; m < bins_.size(); ++m) sum += bin_energy(m);
    return sum;
}

std::size_t Spectrum::index_of(double f_hz) const {
    const double pos = f_hz / resolution_hz() + static_cast<double>(bins_.size() / 2);
    const double rounded = std::round(pos);
    if (rounded < 0.0 || rounded >= static_cast<double>(bins_.size())) return bins_.size();
    const auto m = static_cast<std::size_t>(rounded);
    return freq_[m] == f_hz ? m : bins_.size();
}

Spectrum dft_two_sided(const ComplexSignal& s, Window window) {
    const std::size_t n = s.size();
    if (n < 2) throw InvalidInput("dft_two_sided: at least two samples required");

    std::vector<cplx> x(s.samples().begin(), s.samples().end());
    double gain = 1.0;
    if (window == Window::Hann) {
        // Periodic Hann, RMS-normalised.
        double sum_sq = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double w = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(k) /
                                                  static_cast<double>(n));
            x[k] *= w;
            sum_sq += w * w;
        }
        gain = 1.0 / std::sqrt(sum_sq / static_cast<double>(n));
    }

    const auto raw = forward_dft(x);
    const std::size_t half = n / 2;
    const double inv_n = gain / static_cast<double>(n);
    std::vector<cplx> bins(n);
    for (std::size_t m = 0; m < n; ++m) bins[m] = raw[(m + n - half) % n] * inv_n;
    return Spectrum(std::move(bins), s.sample_rate_hz(), energy(s));
}

double band_energy(const Spectrum& sp, double f_lo_hz, double f_hi_hz) {
    if (!(f_lo_hz < f_hi_hz)) throw InvalidInput("band_energy: require f_lo < f_hi");
    double sum = 0.0;
    for (std::size_t m = 0; m < sp.size(); ++m) {
        const double f = sp.frequency(m);
        if (f >= f_lo_hz && f < f_hi_hz) sum += sp.bin_energy(m);
    }
    return sum;
}

BandEnergyReport band_report(const Spectrum& sp) {
    BandEnergyReport r;
    for (std::size_t m = 0; m < sp.size(); ++m) {
        const double f = sp.frequency(m);
        const double e = sp.bin_energy(m);
        if (f < 0.0) {
            r.l_band += e;
        } else if (f > 0.0) {
            r.r_band += e;
        } else {
            r.dc += e;
        }
    }
    r.total = r.l_band + r.r_band + r.dc;
    if (!(r.total > 0.0)) throw InvalidInput("band_report: spectrum carries no energy");
    r.l_fraction = r.l_band / r.total;
    r.r_fraction = r.r_band / r.total;
    return r;
}

double peak_frequency(const Spectrum& sp) {
    double best = 0.0;
    for (std::size_t m = 0; m < sp.size(); ++m) best = std::max(best, norm2(sp.bins()[m]));
    if (!(best > 0.0)) throw InvalidInput("peak_frequency: spectrum carries no energy");

    const double tie = best * (1.0 - 1e-12);
    bool found = false;
    double pick = 0.0;
    for (std::size_t m = 0; m < sp.size(); ++m) {
        if (norm2(sp.bins()[m]) < tie) continue;
        const double f = sp.frequency(m);
        if (!found || std::abs(f) < std::abs(pick) ||
            (std::abs(f) == std::abs(pick) && f < pick)) {
            pick = f;
            found = true;
        }
    }
    return pick;
}

FrequencyInterval occupied_interval(const Spectrum& sp, double fraction) {
    return occupied_interval(sp, fraction, -sp.sample_rate_hz(), sp.sample_rate_hz());
}

FrequencyInterval occupied_interval(const Spectrum& sp, double fraction, double f_lo_hz,
                                    double f_hi_hz) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw InvalidInput("occupied_interval: fraction must lie in (0, 1]");
    }
    std::vector<std::size_t> selected;
    double total = 0.0;
    for (std::size_t m = 0; m < sp.size(); ++m) {
        const double f = sp.frequency(m);
        if (f >= f_lo_hz && f < f_hi_hz) {
            selected.push_back(m);
            total += sp.bin_energy(m);
        }
    }
    if (!(total > 0.0)) throw InvalidInput("occupied_interval: no energy in the selected range");

    const double lo_target = 0.5 * (1.0 - fraction) * total;
    const double hi_target = 0.5 * (1.0 + fraction) * total;
    const double half_bin = 0.5 * sp.resolution_hz();
    FrequencyInterval out{sp.frequency(selected.front()) - half_bin,
                          sp.frequency(selected.back()) + half_bin};
    double cum = 0.0;
    bool have_lo = false;
    for (const auto m : selected) {
        cum += sp.bin_energy(m);
        if (!have_lo && cum > lo_target) {
            out.lo_hz = sp.frequency(m) - half_bin;
            have_lo = true;
        }
        if (cum >= hi_target) {
            out.hi_hz = sp.frequency(m) + half_bin;
            break;
        }
    }
    return out;
}

double conjugate_symmetry_error(const Spectrum& sp) {
    const std::size_t n = sp.size();
    const std::size_t zero = n / 2;
    double peak = 0.0;
    for (const auto& b : sp.bins()) peak = std::max(peak, std::abs(b));
    if (!(peak > 0.0)) return 0.0;
    double worst = 0.0;
    for (std::size_t j = 1; zero + j < n; ++j) {
        const cplx neg = sp.bins()[zero - j];
        const cplx pos = sp.bins()[zero + j];
        worst = std::max(worst, std::abs(neg - std::conj(pos)));
    }
    // A real signal also has a real-valued DC bin.
    worst = std::max(worst, std::abs(sp.bins()[zero].imag()));
    return worst / peak;
}

double mirror_correlation(const Spectrum& sp) {
    const std::size_t n = sp.size();
    const std::size_t zero = n / 2;
    cplx cross{0.0, 0.0};
    double l_sq = 0.0;
    double r_sq = 0.0;
    for (std::size_t j = 1; zero + j < n; ++j) {
        const cplx neg = sp.bins()[zero - j];
        const cplx pos = sp.bins()[zero + j];
        cross += neg * pos;
        l_sq += norm2(neg);
        r_sq += norm2(pos);
    }
    if (!(l_sq > 0.0 && r_sq > 0.0)) return 0.0;
    return std::abs(cross) / std::sqrt(l_sq * r_sq);
}

}  // namespace negfreq
