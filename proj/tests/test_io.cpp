#include "helpers.hpp"

#include "negfreq/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

using namespace negfreq;

TEST_CASE("number formatting round-trips") {
    Rng rng(77);
    for (int k = 0; k < 10000; ++k) {
        const double v = std::ldexp(uniform01(rng) - 0.5, static_cast<int>(uniform01(rng) * 200) - 100);
        CHECK(parse_double(format_double(v)) == v);
    }
    for (const double v : {0.0, -0.0, 1.0, 0.1, 1e-300, 5e-324, 1.7976931348623157e308}) {
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(65536.0) == "65536");
    CHECK_THROWS_AS(parse_double(""), FormatError);
    CHECK_THROWS_AS(parse_double("1.0x"), FormatError);
    CHECK_THROWS_AS(parse_double("abc"), FormatError);
}

TEST_CASE("signal csv") {
    Rng rng(6);
    const auto s = testing::random_signal(rng, 50, 64.0, 0.25);
    std::stringstream ss;
    write_signal_csv(ss, s);
    const std::string text = ss.str();
    CHECK(text.rfind(std::string(kSignalHeader) + "\n", 0) == 0);
    std::stringstream in(text);
    CHECK(read_signal_csv(in) == s);
    std::stringstream again(text);
    CHECK(read_signal_csv(again, 64.0) == s);

    std::stringstream one;
    write_signal_csv(one, ComplexSignal::constant({1, 2}, 1, 3.0));
    std::stringstream one_in(one.str());
    CHECK_THROWS_AS(read_signal_csv(one_in), FormatError);
    std::stringstream one_rate(one.str());
    CHECK(read_signal_csv(one_rate, 3.0) == ComplexSignal::constant({1, 2}, 1, 3.0));

    std::stringstream bad_header("i,t,re,im\n0,0,1,0\n");
    CHECK_THROWS_AS(read_signal_csv(bad_header), FormatError);
    std::stringstream short_row(std::string(kSignalHeader) + "\n0,0,1\n");
    CHECK_THROWS_AS(read_signal_csv(short_row), FormatError);
    std::stringstream bad_index(std::string(kSignalHeader) + "\n0,0,1,0\n2,1,1,0\n");
    CHECK_THROWS_AS(read_signal_csv(bad_index), FormatError);
    std::stringstream empty(std::string(kSignalHeader) + "\n");
    CHECK_THROWS_AS(read_signal_csv(empty), FormatError);
}

TEST_CASE("spectrum csv") {
    Rng rng(7);
    const auto sp = dft_two_sided(testing::random_signal(rng, 33, 10.0));
    std::stringstream ss;
    write_spectrum_csv(ss, sp);
    const auto table = read_spectrum_csv(ss);
    REQUIRE(table.freq_hz.size() == sp.size());
    for (std::size_t m = 0; m < sp.size(); ++m) {
        CHECK(table.freq_hz[m] == sp.frequency(m));
        CHECK(table.bins[m] == sp.bins()[m]);
        CHECK(table.magnitude[m] == std::abs(sp.bins()[m]));
        CHECK(table.energy[m] == sp.bin_energy(m));
    }
    std::stringstream unsorted(std::string(kSpectrumHeader) + "\n1,0,0,0,0\n0,0,0,0,0\n");
    CHECK_THROWS_AS(read_spectrum_csv(unsorted), FormatError);
}

TEST_CASE("polarized and taps csv") {
    Rng rng(8);
    const auto p = to_polarized(testing::random_signal(rng, 40, 128.0, -1.0));
    std::stringstream ss;
    write_polarized_csv(ss, p);
    CHECK(ss.str().rfind(std::string(kPolarizedHeader), 0) == 0);
    CHECK(read_polarized_csv(ss) == p);

    const std::vector<double> taps{0.25, 0.5, 0.25, -1e-17};
    std::stringstream ts;
    write_taps_csv(ts, taps);
    CHECK(ts.str() == "k,tap\n0,0.25\n1,0.5\n2,0.25\n3,-1e-17\n");
    CHECK(read_taps_csv(ts) == taps);
}

TEST_CASE("file helpers") {
    const auto dir = std::filesystem::temp_directory_path() / "negfreq_io_test";
    std::filesystem::create_directories(dir);
    Rng rng(9);
    const auto s = testing::random_signal(rng, 64, 1024.0);
    save_signal(dir / "s.csv", s);
    CHECK(load_signal(dir / "s.csv") == s);
    save_polarized(dir / "p.csv", to_polarized(s));
    CHECK(load_polarized(dir / "p.csv") == to_polarized(s));
    save_spectrum(dir / "sp.csv", dft_two_sided(s));
    CHECK(load_spectrum(dir / "sp.csv").bins.size() == 64);
    save_taps(dir / "t.csv", std::vector<double>{1.0});
    CHECK(load_taps(dir / "t.csv") == std::vector<double>{1.0});
    CHECK_THROWS_AS(load_signal(dir / "missing.csv"), FormatError);
    CHECK_THROWS_AS(save_signal(dir / "no" / "such" / "dir.csv", s), FormatError);
    std::filesystem::remove_all(dir);
}
