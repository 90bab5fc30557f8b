#include "helpers.hpp"

#include "negfreq/real_carrier.hpp"
#include "negfreq/spectrum.hpp"

#include <doctest.h>

#include <cmath>

using namespace negfreq;

namespace {

constexpr double kFs = 4096.0;
constexpr std::size_t kN = 4096;
constexpr double kFc = 512.0;

double db(double x) { return 20.0 * std::log10(x); }

}  // namespace

TEST_CASE("filter spec validation") {
    CHECK_NOTHROW(validate(FilterSpec::default_for_carrier(kFc), kFs));
    CHECK_THROWS_AS(validate(FilterSpec{0.0, 10.0, 60.0}, kFs), InvalidInput);
    CHECK_THROWS_AS(validate(FilterSpec{100.0, -1.0, 60.0}, kFs), InvalidInput);
    CHECK_THROWS_AS(validate(FilterSpec{100.0, 10.0, 0.0}, kFs), InvalidInput);
    CHECK_THROWS_AS(validate(FilterSpec{2000.0, 48.0, 60.0}, kFs), InvalidInput);
    CHECK_THROWS_AS(validate(FilterSpec{100.0, 250.0, 60.0}, kFs), InvalidInput);
    // A 1 Hz transition at 4096 Hz needs far more than the tap cap.
    CHECK_THROWS_AS(design_lowpass(FilterSpec{500.0, 1.0, 60.0}, kFs), InvalidInput);
    const auto d = FilterSpec::default_for_carrier(-8.0);
    CHECK(d.cutoff_hz == 6.0);
    CHECK(d.transition_hz == 2.0);
    CHECK(d.stopband_atten_db == 60.0);
    CHECK(d.passband_edge_hz() == 5.0);
    CHECK(d.stopband_edge_hz() == 7.0);
}

TEST_CASE("designed low-pass meets its mask") {
    const FilterSpec specs[] = {FilterSpec::default_for_carrier(kFc), {200.0, 50.0, 60.0},
                                {1000.0, 300.0, 80.0}, {600.0, 100.0, 40.0}};
    for (const auto& spec : specs) {
        const auto taps = design_lowpass(spec, kFs);
        REQUIRE(taps.size() % 2 == 1);
        CHECK(taps.size() <= kMaxFilterTaps);
        double sum = 0.0;
        for (double t : taps) sum += t;
        CHECK(std::abs(sum - 1.0) < 1e-9);
        for (std::size_t k = 0; k < taps.size(); ++k) CHECK(taps[k] == taps[taps.size() - 1 - k]);

        double pass_max = 0.0, pass_min = 1e9, stop_max = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double f = spec.passband_edge_hz() * i / 400.0;
            const double h = magnitude_response(taps, f, kFs);
            pass_max = std::max(pass_max, h);
            pass_min = std::min(pass_min, h);
        }
        for (int i = 0; i <= 2000; ++i) {
            const double f = spec.stopband_edge_hz() + (kFs / 2 - spec.stopband_edge_hz()) * i / 2000.0;
            stop_max = std::max(stop_max, magnitude_response(taps, f, kFs));
        }
        CHECK(db(pass_max) - db(pass_min) < 0.5);
        CHECK(-db(stop_max) >= spec.stopband_atten_db - 3.0);
        CHECK(magnitude_response(taps, spec.cutoff_hz, kFs) == doctest::Approx(0.5).epsilon(0.02));
    }
}

TEST_CASE("filtered on-bin tone at the stopband limit") {
    const auto spec = FilterSpec::default_for_carrier(kFc);
    const auto taps = design_lowpass(spec, kFs);
    const double f = spec.cutoff_hz + spec.transition_hz;
    const auto tone = oscillator({f, 0.0}, kN, kFs);
    const auto out = apply_filter(tone, taps);
    const double atten =
        10.0 * std::log10(energy(trim(tone, out.edge_transient())) / energy(steady_state(out)));
    CHECK(atten >= spec.stopband_atten_db - 3.0);
}

TEST_CASE("apply_filter basics") {
    Rng rng(1);
    const auto s = testing::random_signal(rng, 300, 100.0);
    const std::vector<double> unit{1.0};
    CHECK(apply_filter(s, unit) == s);
    CHECK_THROWS_AS(apply_filter(s, std::vector<double>{}), InvalidInput);

    const auto taps = design_lowpass(FilterSpec{10.0, 5.0, 60.0}, 100.0);
    const auto c = apply_filter(ComplexSignal::constant({2.0, -1.0}, 300, 100.0), taps);
    CHECK(c.size() == 300);
    CHECK(c.edge_transient() == (taps.size() - 1) / 2);
    const auto c_ss = steady_state(c);
    for (const auto& x : c_ss.samples()) CHECK(std::abs(x - cplx{2.0, -1.0}) < 1e-9);

    // Group-delay compensation: an impulse lands on the tap centre.
    std::vector<cplx> imp(301, cplx{0, 0});
    imp[150] = 1.0;
    const auto h = apply_filter(ComplexSignal(imp, 100.0), taps);
    const std::size_t mid = (taps.size() - 1) / 2;
    for (std::size_t k = 0; k < taps.size(); ++k) CHECK(h[150 - mid + k].real() == taps[k]);

    // A tone in the passband keeps its amplitude.
    const auto tone = oscillator({4.0, 0.3}, 1000, 100.0);
    const auto kept = steady_state(apply_filter(tone, taps));
    double lo = 1e9, hi = 0.0;
    for (const auto& x : kept.samples()) {
        lo = std::min(lo, std::abs(x));
        hi = std::max(hi, std::abs(x));
    }
    CHECK(std::abs(db(lo)) < 0.5);
    CHECK(std::abs(db(hi)) < 0.5);
}

TEST_CASE("real modulation waveforms") {
    const std::size_t n = 64;
    const double fs = 64.0, f = 8.0;
    const auto cos_wave = real_modulate(ComplexSignal::constant({1, 0}, n, fs), {f, 0.0});
    const auto sin_wave = real_modulate(ComplexSignal::constant({0, 1}, n, fs), {f, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        const double ph = kTwoPi * f * k / fs;
        CHECK(cos_wave[k].imag() == 0.0);
        CHECK(std::abs(cos_wave[k].real() - std::cos(ph)) < 1e-12);
        CHECK(std::abs(sin_wave[k].real() + std::sin(ph)) < 1e-12);
    }
    const auto br = band_report(dft_two_sided(cos_wave));
    CHECK(br.l_fraction == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(br.r_fraction == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("real modulation of shaped baseband") {
    for (const std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const auto bb = testing::shaped_baseband(seed, kN, kFs);
        for (const double fc : {kFc, -kFc, 700.0, -1300.0}) {
            const auto pb = real_modulate(bb, {fc, 0.4});
            for (const auto& x : pb.samples()) REQUIRE(x.imag() == 0.0);
            // Re{bb e^{iwt}} = (conj(bb) e^{-iwt} + bb e^{iwt}) / 2
            const auto osc_p = oscillator({fc, 0.4}, kN, kFs);
            const auto expanded = scale(add(multiply(conjugate(bb), conjugate(osc_p)),
                                            multiply(bb, osc_p)), 0.5);
            CHECK(max_abs_diff(pb, expanded) < 1e-12);
            const auto sp = dft_two_sided(pb);
            const auto br = band_report(sp);
            CHECK(br.l_fraction >= 0.49);
            CHECK(br.l_fraction <= 0.51);
            CHECK(br.r_fraction >= 0.49);
            CHECK(br.r_fraction <= 0.51);
            CHECK(conjugate_symmetry_error(sp) < 1e-9);
        }
    }
}

TEST_CASE("real modulation preconditions") {
    const auto bb = testing::shaped_baseband(5, kN, kFs);
    CHECK_THROWS_AS(real_modulate(bb, {40.0, 0.0}), InvalidInput);    // overlap
    CHECK_THROWS_AS(real_modulate(bb, {2020.0, 0.0}), InvalidInput);  // Nyquist
    CHECK_THROWS_AS(real_modulate(bb, {2048.0, 0.0}), InvalidInput);
    CHECK_THROWS_AS(real_modulate(ComplexSignal::constant({1, 0}, 1, 4.0), {0.0, 0.0}), InvalidInput);
}

TEST_CASE("real demodulation recovers half the baseband") {
    const auto lpf = FilterSpec::default_for_carrier(kFc);
    for (const std::uint64_t seed : {11u, 12u, 13u}) {
        const auto bb = testing::shaped_baseband(seed, kN, kFs);
        const CarrierConfig tx{kFc, 0.9};
        const auto pb = real_modulate(bb, tx);
        const auto a = real_demodulate(pb, tx.conjugate(), lpf);
        const auto b = real_demodulate(pb, tx, lpf);
        const std::size_t edge = a.edge_transient();
        REQUIRE(edge > 0);
        const auto half = trim(scale(bb, 0.5), edge);
        const auto a_ss = steady_state(a);
        const auto b_ss = steady_state(b);
        CHECK(max_abs_diff(a_ss, half) < 1e-3 * peak_magnitude(half));
        CHECK(max_abs_diff(b_ss, conjugate(half)) < 1e-3 * peak_magnitude(half));
        CHECK(max_abs_diff(b_ss, conjugate(a_ss)) < 1e-9);
        const double ratio = energy(a_ss) / energy(trim(bb, edge));
        CHECK(ratio >= 0.245);
        CHECK(ratio <= 0.255);
    }

    SUBCASE("constant baseband") {
        const auto bb = ComplexSignal::constant({1, 0}, kN, kFs);
        const auto rec = real_demodulate(real_modulate(bb, {kFc, 0.0}), {-kFc, 0.0}, lpf);
        const auto rec_ss = steady_state(rec);
        for (const auto& x : rec_ss.samples()) CHECK(std::abs(x - cplx{0.5, 0}) < 1e-3);
        const double ratio = energy(steady_state(rec)) / energy(trim(bb, rec.edge_transient()));
        CHECK(ratio == doctest::Approx(0.25).epsilon(0.02));
    }
}

TEST_CASE("real demodulation preconditions") {
    const auto bb = testing::shaped_baseband(9, kN, kFs);
    const auto pb = real_modulate(bb, {kFc, 0.0});
    CHECK_THROWS_AS(real_demodulate(bb, {-kFc, 0.0}, FilterSpec::default_for_carrier(kFc)),
                    InvalidInput);
    CHECK_THROWS_AS(real_demodulate(pb, {-kFc, 0.0}, FilterSpec{1000.0, 100.0, 60.0}), InvalidInput);
    CHECK_NOTHROW(real_demodulate(pb, {-kFc, 0.0}, FilterSpec{900.0, 100.0, 60.0}));
    const auto mixed = mix_down(pb, {-kFc, 0.0});
    CHECK(max_abs_diff(mixed, multiply(pb, oscillator({-kFc, 0.0}, kN, kFs))) == 0.0);
}
