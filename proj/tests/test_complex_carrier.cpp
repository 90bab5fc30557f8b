#include "helpers.hpp"

#include "negfreq/complex_carrier.hpp"
#include "negfreq/spectrum.hpp"

#include <doctest.h>

#include <cmath>

using namespace negfreq;

namespace {

constexpr double kFs = 4096.0;
constexpr std::size_t kN = 4096;
constexpr double kFc = 512.0;

}  // namespace

TEST_CASE("complex modulation lands on one band") {
    const auto ones = ComplexSignal::constant({1, 0}, kN, kFs);
    const auto l = complex_modulate(ones, {-kFc, 0.0});
    CHECK(l == oscillator({-kFc, 0.0}, kN, kFs));
    CHECK(peak_frequency(dft_two_sided(l)) == -kFc);

    const auto bb = testing::shaped_baseband(3, kN, kFs);
    const auto r = complex_modulate(bb, {kFc, 0.0});
    const auto br = band_report(dft_two_sided(r));
    CHECK(br.r_fraction > 0.99);
    CHECK(br.l_fraction < 0.01);
    CHECK(max_abs_diff(real_part(r), real_modulate(bb, {kFc, 0.0})) < 1e-12);
}

TEST_CASE("complex round trip is exact") {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(uniform01(rng) * 3000);
        const auto bb = testing::random_narrowband(rng, n, kFs);
        const CarrierConfig c{(uniform01(rng) - 0.5) * kFs * 0.7, (uniform01(rng) - 0.5) * 20.0};
        const auto cb = complex_modulate(bb, c);
        CHECK(max_abs_diff(complex_demodulate(cb, c), bb) < 1e-12);
        CHECK(std::abs(energy(cb) - energy(bb)) < 1e-12 * energy(bb));
    }
}

TEST_CASE("demodulating with the wrong rotation sense misses the baseband") {
    const auto bb = testing::shaped_baseband(4, kN, kFs);
    const CarrierConfig c{kFc, 0.0};
    const auto wrong = multiply(complex_modulate(bb, c), oscillator(c, kN, kFs));
    const auto sp = dft_two_sided(wrong);
    const auto bb_band = occupied_interval(dft_two_sided(bb));
    CHECK(band_energy(sp, bb_band.lo_hz, bb_band.hi_hz) < 0.01 * sp.total_energy());
    CHECK(std::abs(peak_frequency(sp) - 2.0 * kFc) < 100.0);
}

TEST_CASE("band move group laws") {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = testing::random_narrowband(rng, 2048, kFs);
        const double f1 = (uniform01(rng) - 0.5) * kFs / 4.0;
        const double f2 = (uniform01(rng) - 0.5) * kFs / 4.0;
        const auto s12 = band_move(band_move(s, f1), f2);
        CHECK(max_abs_diff(s12, band_move(s, f1 + f2)) < 1e-12);
        CHECK(max_abs_diff(s12, band_move(band_move(s, f2), f1)) < 1e-12);
        CHECK(band_move(s, 0.0) == s);
        CHECK(max_abs_diff(band_move(band_move(s, f1), -f1), s) < 1e-12);
    }
    const auto l = oscillator({-kFc, 0.0}, kN, kFs);
    const auto moved = band_move(l, 2.0 * kFc);
    CHECK(max_abs_diff(moved, oscillator({kFc, 0.0}, kN, kFs)) < 1e-12);
    CHECK(peak_frequency(dft_two_sided(moved)) == kFc);
}

TEST_CASE("band move rejects shifts past Nyquist") {
    const auto s = oscillator({1000.0, 0.0}, kN, kFs);
    CHECK_THROWS_AS(band_move(s, 1100.0), InvalidInput);
    CHECK_THROWS_AS(band_move(s, kFs / 2.0), InvalidInput);
    CHECK_NOTHROW(band_move(s, -1500.0));
    CHECK_THROWS_AS(complex_modulate(s, {1100.0, 0.0}), InvalidInput);
    // Single samples and silence carry no band to check.
    CHECK_NOTHROW(band_move(ComplexSignal::constant({1, 0}, 1, kFs), 100.0));
    CHECK_NOTHROW(band_move(ComplexSignal::zeros(16, kFs), 100.0));
}

TEST_CASE("dual modulation") {
    const auto a = testing::shaped_baseband(42, kN, kFs);
    const auto b = testing::shaped_baseband(43, kN, kFs);
    const auto zero = ComplexSignal::zeros(kN, kFs);

    CHECK(dual_modulate({zero, b, 0.0}, kFc) == complex_modulate(b, {kFc, 0.0}));

    {
        // 512 symbols per stream so the chance correlation sits well below 0.1.
        const auto la = testing::shaped_baseband(42, 8 * kN, kFs);
        const auto lb = testing::shaped_baseband(43, 8 * kN, kFs);
        const auto sp = dft_two_sided(dual_modulate({la, lb, 100.0}, kFc));
        const auto br = band_report(sp);
        CHECK(br.l_fraction == doctest::Approx(0.5).epsilon(0.1));
        CHECK(br.r_fraction == doctest::Approx(0.5).epsilon(0.1));
        CHECK(mirror_correlation(sp) < 0.1);
        CHECK(mirror_correlation(dft_two_sided(real_modulate(la, {kFc, 0.0}))) > 1.0 - 1e-9);
    }

    SUBCASE("tones land on two peaks") {
        const auto ta = oscillator({8.0, 0.0}, kN, kFs);
        const auto tb = scale(oscillator({-16.0, 0.0}, kN, kFs), 0.5);
        const auto tsp = dft_two_sided(dual_modulate({ta, tb, 0.0}, kFc));
        std::size_t big = 0;
        for (std::size_t m = 0; m < tsp.size(); ++m) {
            if (std::abs(tsp.bins()[m]) > 1e-9) ++big;
        }
        CHECK(big == 2);
        CHECK(std::abs(tsp.bins()[tsp.index_of(-kFc + 8.0)] - cplx{1, 0}) < 1e-12);
        CHECK(std::abs(tsp.bins()[tsp.index_of(kFc - 16.0)] - cplx{0.5, 0}) < 1e-12);
    }
    SUBCASE("additive in each stream") {
        const auto a2 = testing::shaped_baseband(44, kN, kFs);
        const auto lhs = dual_modulate({add(a, a2), b, 0.0}, kFc);
        const auto rhs = add(dual_modulate({a, b, 0.0}, kFc), dual_modulate({a2, zero, 0.0}, kFc));
        CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(dual_modulate({a, b, 0.0}, 0.0), InvalidInput);
        CHECK_THROWS_AS(dual_modulate({a, b, -1.0}, kFc), InvalidInput);
        CHECK_THROWS_AS(dual_modulate({a, ComplexSignal::zeros(kN - 1, kFs), 0.0}, kFc), InvalidInput);
        CHECK_THROWS_AS(dual_modulate({a, b, 0.0}, 30.0), InvalidInput);
        CHECK_THROWS_AS(dual_modulate({a, b, 500.0}, kFc), InvalidInput);
    }
}

TEST_CASE("dual demodulation separates the streams") {
    const auto lpf = FilterSpec::default_for_carrier(kFc);
    const auto a = testing::shaped_baseband(42, kN, kFs);
    const auto b = testing::shaped_baseband(43, kN, kFs);
    const auto zero = ComplexSignal::zeros(kN, kFs);
    const auto out = dual_demodulate(dual_modulate({a, b, 100.0}, kFc), kFc, lpf);
    CHECK(evm_db(out.stream_a, a) < -40.0);
    CHECK(evm_db(out.stream_b, b) < -40.0);

    const auto only_a = dual_demodulate(dual_modulate({a, zero, 0.0}, kFc), kFc, lpf);
    const auto taps = design_lowpass(lpf, kFs);
    const auto plain = apply_filter(complex_demodulate(complex_modulate(a, {-kFc, 0.0}), {-kFc, 0.0}), taps);
    CHECK(max_abs_diff(only_a.stream_a, plain) < 1e-12);
    const double leak = 10.0 * std::log10(energy(steady_state(only_a.stream_b)) /
                                          energy(steady_state(only_a.stream_a)));
    CHECK(leak < -40.0);

    CHECK_THROWS_AS(dual_demodulate(dual_modulate({a, b, 0.0}, kFc), kFc, FilterSpec{800.0, 200.0, 60.0}),
                    InvalidInput);
    CHECK_THROWS_AS(dual_demodulate(dual_modulate({a, b, 0.0}, kFc), -kFc, lpf), InvalidInput);
}

TEST_CASE("evm") {
    const auto ref = ComplexSignal::constant({1, 0}, 100, 1.0);
    const auto off = ComplexSignal::constant({1.1, 0}, 100, 1.0);
    CHECK(evm_db(off, ref) == doctest::Approx(-20.0));
    CHECK(evm_db(ref, ref) == -HUGE_VAL);
    CHECK_THROWS_AS(evm_db(ref, ComplexSignal::zeros(100, 1.0)), InvalidInput);
    CHECK_THROWS_AS(evm_db(ref, ComplexSignal::zeros(99, 1.0)), InvalidInput);
    CHECK_THROWS_AS(evm_db(ref.with_edge_transient(50), ref), InvalidInput);
}
