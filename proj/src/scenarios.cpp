#include "negfreq/complex_carrier.hpp"
#include "negfreq/experiment.hpp"
#include "negfreq/io.hpp"
#include "negfreq/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace negfreq {

namespace {

// Collects entries, checks and artifacts for one run and writes the
// artifacts as they are produced.
class RunContext {
public:
    explicit RunContext(const ScenarioConfig& cfg) : cfg_(cfg) {
        report_.scenario = cfg.scenario;
        report_.digest = config_digest(cfg);
        report_.config = canonical_config(cfg);
        if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);
    }

    const ScenarioConfig& cfg() const { return cfg_; }

    void value(const std::string& key, double v) { report_.entries.emplace_back(key, format_double(v)); }
    void label(const std::string& key, std::string_view v) {
        report_.entries.emplace_back(key, std::string(v));
    }

    bool check(const std::string& name, double measured, Threshold t) {
        const bool pass = t.admits(measured);
        report_.checks.push_back(Check{name, measured, t, pass});
        return pass;
    }

    // Spectrum of s dumped as <stem>.spectrum.csv with its band report and
    // time-domain energy recorded under band.<stem>.* and energy.<stem>.
    Spectrum spectrum(const std::string& stem, const ComplexSignal& s) {
        auto sp = dft_two_sided(s);
        const auto file = stem + ".spectrum.csv";
        artifact(file, "spectrum");
        if (writing()) save_spectrum(cfg_.out_dir / file, sp);
        const auto br = band_report(sp);
        value("band." + stem + ".l_band", br.l_band);
        value("band." + stem + ".r_band", br.r_band);
        value("band." + stem + ".dc", br.dc);
        value("band." + stem + ".total", br.total);
        value("band." + stem + ".l_fraction", br.l_fraction);
        value("band." + stem + ".r_fraction", br.r_fraction);
        value("energy." + stem, energy(s));
        return sp;
    }

    void signal(const std::string& stem, const ComplexSignal& s) {
        const auto file = stem + ".signal.csv";
        artifact(file, "signal");
        if (writing()) save_signal(cfg_.out_dir / file, s);
    }

    void polarized(const std::string& stem, const PolarizedPair& p) {
        const auto file = stem + ".polarized.csv";
        artifact(file, "polarized");
        if (writing()) save_polarized(cfg_.out_dir / file, p);
    }

    void taps(const std::string& stem, std::span<const double> t) {
        const auto file = stem + ".taps.csv";
        artifact(file, "taps");
        if (writing()) save_taps(cfg_.out_dir / file, t);
    }

    RunReport finish() {
        if (writing()) {
            std::ofstream os(cfg_.out_dir / kReportFile);
            os << report_.to_text();
            if (!os) throw FormatError("cannot write " + (cfg_.out_dir / kReportFile).string());
        }
        return std::move(report_);
    }

private:
    bool writing() const { return !cfg_.out_dir.empty(); }
    void artifact(const std::string& file, const char* schema) {
        report_.artifacts.emplace_back(file, schema);
    }

    const ScenarioConfig& cfg_;
    RunReport report_;
};

ComplexSignal make_baseband(const ScenarioConfig& cfg, std::uint64_t seed) {
    const auto msg = SymbolStream::random(cfg.constellation, cfg.n_symbols(), seed);
    return generate_baseband(msg, cfg.samples_per_symbol(), PulseShape::raised_cosine(cfg.rolloff),
                             cfg.sample_rate_hz);
}

// Stream B of the dual scenarios uses the next seed.
ComplexSignal make_second_baseband(const ScenarioConfig& cfg) {
    return make_baseband(cfg, cfg.seed + 1);
}

// Half-width of the band a shaped baseband occupies, plus the guard.
double band_halfwidth(const ScenarioConfig& cfg) {
    return 0.5 * (1.0 + cfg.rolloff) * cfg.symbol_rate_hz + cfg.guard_hz;
}

double fraction_near(const Spectrum& sp, double centre, double halfwidth) {
    return band_energy(sp, centre - halfwidth, centre + halfwidth) / sp.total_energy();
}

double relative_error(double measured, double reference) {
    return std::abs(measured - reference) / std::abs(reference);
}

// Fraction of the baseband energy inside its nominal two-sided bandwidth
// plus one resolution bin.
void check_baseband_occupancy(RunContext& ctx, const Spectrum& sp) {
    const auto& cfg = ctx.cfg();
    const double edge = 0.5 * (1.0 + cfg.rolloff) * cfg.symbol_rate_hz + sp.resolution_hz();
    ctx.check("baseband_in_band_fraction", band_energy(sp, -edge, edge) / sp.total_energy(),
              Threshold::greater_eq(0.99));
}

void run_fig4(RunContext& ctx) {
    const auto& cfg = ctx.cfg();
    const CarrierConfig carrier{cfg.f_c_hz, 0.0};
    const auto bb = make_baseband(cfg, cfg.seed);
    const auto pb = real_modulate(bb, carrier);

    const auto bb_sp = ctx.spectrum("baseband", bb);
    const auto pb_sp = ctx.spectrum("passband", pb);
    check_baseband_occupancy(ctx, bb_sp);

    // Re{bb e^{iwt}} = conj(bb) e^{-iwt}/2 + bb e^{iwt}/2
    const auto expansion =
        scale(add(multiply(conjugate(bb), oscillator_like(CarrierConfig{-cfg.f_c_hz, 0.0}, bb)),
                  multiply(bb, oscillator_like(carrier, bb))),
              0.5);
    const auto report = band_report(pb_sp);
    const double w = band_halfwidth(cfg);
    ctx.value("energy_ratio.passband_over_baseband", energy(pb) / energy(bb));
    ctx.check("l_fraction", report.l_fraction, Threshold::within(0.49, 0.51));
    ctx.check("r_fraction", report.r_fraction, Threshold::within(0.49, 0.51));
    ctx.check("l_band_at_minus_fc_fraction", fraction_near(pb_sp, -cfg.f_c_hz, w),
              Threshold::within(0.49, 0.51));
    ctx.check("r_band_at_plus_fc_fraction", fraction_near(pb_sp, cfg.f_c_hz, w),
              Threshold::within(0.49, 0.51));
    ctx.check("conjugate_symmetry_error", conjugate_symmetry_error(pb_sp), Threshold::less(1e-9));
    ctx.check("mirror_correlation", mirror_correlation(pb_sp), Threshold::greater_eq(1.0 - 1e-9));
    ctx.check("expansion_identity_max_err", max_abs_diff(pb, expansion), Threshold::less(1e-12));
}

void run_fig5(RunContext& ctx) {
    const auto& cfg = ctx.cfg();
    const CarrierConfig carrier{cfg.f_c_hz, 0.0};
    const FilterSpec lpf = cfg.filter();
    const auto bb = make_baseband(cfg, cfg.seed);
    const auto pb = real_modulate(bb, carrier);
    const auto mixed = mix_down(pb, carrier.conjugate());
    const auto taps = design_lowpass(lpf, cfg.sample_rate_hz);
    const auto recovered = real_demodulate(pb, carrier.conjugate(), lpf);
    const auto recovered_conj = real_demodulate(pb, carrier, lpf);

    ctx.spectrum("passband", pb);
    const auto mixed_sp = ctx.spectrum("mixed", mixed);
    ctx.spectrum("recovered", recovered);
    ctx.taps("lowpass", taps);
    ctx.signal("baseband", bb);
    ctx.signal("recovered", recovered);

    const std::size_t edge = recovered.edge_transient();
    const auto half_bb = scale(bb, 0.5);
    const auto rec_ss = trim(recovered, edge);
    const auto half_ss = trim(half_bb, edge);
    const auto bb_ss = trim(bb, edge);
    const double w = band_halfwidth(cfg);

    ctx.value("filter.taps", static_cast<double>(taps.size()));
    ctx.value("filter.transient_samples", static_cast<double>(edge));
    ctx.value("energy.baseband_steady", energy(bb_ss));
    ctx.value("energy.recovered_steady", energy(rec_ss));
    ctx.value("energy.discarded", energy(mixed) - energy(recovered));

    ctx.check("mixed_dc_band_fraction", fraction_near(mixed_sp, 0.0, w),
              Threshold::within(0.49, 0.51));
    ctx.check("mixed_image_at_minus_2fc_fraction", fraction_near(mixed_sp, -2.0 * cfg.f_c_hz, w),
              Threshold::within(0.49, 0.51));
    ctx.check("recovered_max_dev_peak_rel",
              max_abs_diff(rec_ss, half_ss) / peak_magnitude(half_ss), Threshold::less(1e-3));
    ctx.check("recovered_energy_ratio", energy(rec_ss) / energy(bb_ss),
              Threshold::within(0.245, 0.255));
    ctx.check("conjugate_branch_max_err",
              max_abs_diff(trim(recovered_conj, edge), conjugate(rec_ss)), Threshold::less(1e-9));
}

void run_fig6(RunContext& ctx) {
    const auto& cfg = ctx.cfg();
    const CarrierConfig carrier{-cfg.f_c_hz, 0.0};
    const auto bb = make_baseband(cfg, cfg.seed);
    const auto cb = complex_modulate(bb, carrier);
    ctx.spectrum("baseband", bb);
    const auto sp = ctx.spectrum("modulated", cb);
    const auto report = band_report(sp);
    ctx.check("l_fraction", report.l_fraction, Threshold::greater(0.99));
    ctx.check("r_fraction", report.r_fraction, Threshold::less(0.01));
    ctx.check("l_band_at_minus_fc_fraction", fraction_near(sp, -cfg.f_c_hz, band_halfwidth(cfg)),
              Threshold::greater(0.99));
    ctx.check("energy_rel_err", relative_error(energy(cb), energy(bb)), Threshold::less(1e-12));
}

void run_fig7(RunContext& ctx) {
    const auto& cfg = ctx.cfg();
    const auto a = make_baseband(cfg, cfg.seed);
    const auto b = make_second_baseband(cfg);
    const auto cb = dual_modulate(DualMessage{a, b, cfg.guard_hz}, cfg.f_c_hz);
    const auto real_pb = real_modulate(a, CarrierConfig{cfg.f_c_hz, 0.0});

    ctx.spectrum("stream_a", a);
    ctx.spectrum("stream_b", b);
    const auto sp = ctx.spectrum("dual", cb);
    const auto real_sp = ctx.spectrum("real_passband", real_pb);
    const auto report = band_report(sp);
    const double w = band_halfwidth(cfg);
    const double total = sp.total_energy();

    ctx.check("l_fraction", report.l_fraction, Threshold::within(0.45, 0.55));
    ctx.check("r_fraction", report.r_fraction, Threshold::within(0.45, 0.55));
    ctx.check("l_band_holds_stream_a",
              band_energy(sp, -cfg.f_c_hz - w, -cfg.f_c_hz + w) / energy(a),
              Threshold::within(0.99, 1.01));
    ctx.check("r_band_holds_stream_b", band_energy(sp, cfg.f_c_hz - w, cfg.f_c_hz + w) / energy(b),
              Threshold::within(0.99, 1.01));
    ctx.check("outside_both_bands_fraction",
              1.0 - (band_energy(sp, -cfg.f_c_hz - w, -cfg.f_c_hz + w) +
                     band_energy(sp, cfg.f_c_hz - w, cfg.f_c_hz + w)) / total,
              Threshold::less(0.01));
    ctx.check("dual_mirror_correlation", mirror_correlation(sp), Threshold::less(0.1));
    ctx.check("real_mirror_correlation", mirror_correlation(real_sp),
              Threshold::greater_eq(1.0 - 1e-9));
}

void run_fig9(RunContext& ctx) {
    const auto& cfg = ctx.cfg();
    const auto bb = make_baseband(cfg, cfg.seed);
    const CarrierConfig l_carrier{-cfg.f_c_hz, 0.0};
    const CarrierConfig r_carrier{cfg.f_c_hz, 0.0};
    const auto cb_l = complex_modulate(bb, l_carrier);
    const auto rec_l = complex_demodulate(cb_l, l_carrier);
    const auto rec_r = complex_demodulate(complex_modulate(bb, r_carrier), r_carrier);

    ctx.spectrum("baseband", bb);
    ctx.spectrum("modulated", cb_l);
    ctx.spectrum("recovered", rec_l);

    ctx.check("round_trip_max_err", max_abs_diff(rec_l, bb), Threshold::less(1e-12));
    ctx.check("r_complex_round_trip_max_err", max_abs_diff(rec_r, bb), Threshold::less(1e-12));
    ctx.check("modulation_energy_rel_err", relative_error(energy(cb_l), energy(bb)),
              Threshold::less(1e-12));
    ctx.check("recovered_energy_ratio", energy(rec_l) / energy(bb),
              Threshold::within(1.0 - 1e-12, 1.0 + 1e-12));
}

// Steady-state energy of `leak` relative to `reference`, in dB.
double leakage_db(const ComplexSignal& leak, const ComplexSignal& reference) {
    const std::size_t edge = leak.edge_transient();
    return 10.0 * std::log10(energy(trim(leak, edge)) / energy(trim(reference, edge)));
}

void run_fig10(RunContext& ctx) {
    const auto& cfg = ctx.cfg();
    const FilterSpec lpf = cfg.filter();
    const auto a = make_baseband(cfg, cfg.seed);
    const auto b = make_second_baseband(cfg);
    const auto zero = ComplexSignal::zeros(a.size(), a.sample_rate_hz());
    const auto cb = dual_modulate(DualMessage{a, b, cfg.guard_hz}, cfg.f_c_hz);
    const auto out = dual_demodulate(cb, cfg.f_c_hz, lpf);
    const auto only_a = dual_demodulate(dual_modulate(DualMessage{a, zero, cfg.guard_hz}, cfg.f_c_hz),
                                        cfg.f_c_hz, lpf);
    const auto only_b = dual_demodulate(dual_modulate(DualMessage{zero, b, cfg.guard_hz}, cfg.f_c_hz),
                                        cfg.f_c_hz, lpf);

    ctx.spectrum("dual", cb);
    ctx.spectrum("recovered_a", out.stream_a);
    ctx.spectrum("recovered_b", out.stream_b);
    ctx.signal("recovered_a", out.stream_a);
    ctx.signal("recovered_b", out.stream_b);

    ctx.value("filter.transient_samples", static_cast<double>(out.stream_a.edge_transient()));
    ctx.check("evm_a_db", evm_db(out.stream_a, a), Threshold::less(-40.0));
    ctx.check("evm_b_db", evm_db(out.stream_b, b), Threshold::less(-40.0));
    ctx.check("leakage_a_into_b_db", leakage_db(only_a.stream_b, a), Threshold::less(-40.0));
    ctx.check("leakage_b_into_a_db", leakage_db(only_b.stream_a, b), Threshold::less(-40.0));
}

// Unit-peak sum of four random complex tones within +-fs/16.
ComplexSignal random_tone_mix(Rng& rng, std::size_t n, double fs) {
    auto s = ComplexSignal::zeros(n, fs);
    for (int j = 0; j < 4; ++j) {
        const double f = (uniform01(rng) - 0.5) * fs / 8.0;
        const auto [re, im] = normal_pair(rng);
        s = add(s, scale(oscillator(CarrierConfig{f, kTwoPi * uniform01(rng)}, n, fs), cplx{re, im}));
    }
    return scale(s, 1.0 / peak_magnitude(s));
}

void run_group_laws(RunContext& ctx) {
    const auto& cfg = ctx.cfg();
    const double fs = cfg.sample_rate_hz;
    constexpr std::size_t kTrialLength = 2048;
    const std::size_t n = std::min(kTrialLength, cfg.n_samples);
    Rng rng(cfg.seed);
    double additivity = 0.0, commutativity = 0.0, identity = 0.0, inverse = 0.0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        const auto s = random_tone_mix(rng, n, fs);
        const double f1 = (uniform01(rng) - 0.5) * fs / 4.0;
        const double f2 = (uniform01(rng) - 0.5) * fs / 4.0;
        const auto s12 = band_move(band_move(s, f1), f2);
        const auto s21 = band_move(band_move(s, f2), f1);
        additivity = std::max(additivity, max_abs_diff(s12, band_move(s, f1 + f2)));
        commutativity = std::max(commutativity, max_abs_diff(s12, s21));
        identity = std::max(identity, max_abs_diff(band_move(s, 0.0), s));
        inverse = std::max(inverse, max_abs_diff(band_move(band_move(s, f1), -f1), s));
    }
    ctx.value("trials", static_cast<double>(cfg.trials));
    ctx.value("trial_length", static_cast<double>(n));
    ctx.check("additivity_max_err", additivity, Threshold::less(1e-12));
    ctx.check("commutativity_max_err", commutativity, Threshold::less(1e-12));
    ctx.check("identity_max_err", identity, Threshold::less(1e-12));
    ctx.check("inverse_max_err", inverse, Threshold::less(1e-12));

    // An L-frequency tone becomes an R-frequency tone after a 2*f0 move.
    const double f0 = cfg.f_c_hz;
    const auto tone = oscillator(CarrierConfig{-f0, 0.0}, cfg.n_samples, fs);
    const auto moved = band_move(tone, 2.0 * f0);
    ctx.spectrum("tone_l", tone);
    ctx.spectrum("tone_moved", moved);
    ctx.check("sign_flip_input_peak_hz", peak_frequency(dft_two_sided(tone)), Threshold::equal(-f0));
    ctx.check("sign_flip_peak_hz", peak_frequency(dft_two_sided(moved)), Threshold::equal(f0));
}

void run_compare(RunContext& ctx) {
    const auto& cfg = ctx.cfg();
    const FilterSpec lpf = cfg.filter();
    const CarrierConfig carrier{cfg.f_c_hz, 0.0};
    const double w = band_halfwidth(cfg);

    // Real chain: one stream.
    const auto bb = make_baseband(cfg, cfg.seed);
    const auto pb = real_modulate(bb, carrier);
    const auto rec = real_demodulate(pb, carrier.conjugate(), lpf);
    const std::size_t edge = rec.edge_transient();
    const auto rec_ss = trim(rec, edge);
    const auto bb_ss = trim(bb, edge);
    cplx cross{0.0, 0.0};
    for (std::size_t k = 0; k < rec_ss.size(); ++k) cross += rec_ss[k] * std::conj(bb_ss[k]);
    const double amplitude = cross.real() / (energy(bb_ss) * cfg.sample_rate_hz);
    const double tx_real = energy(pb);
    const auto pb_sp = ctx.spectrum("real_passband", pb);

    // Dual complex chain: two streams, scaled so each carries half of the
    // real chain's transmit energy.
    const auto a_raw = make_baseband(cfg, cfg.seed);
    const auto b_raw = make_second_baseband(cfg);
    const auto a = scale(a_raw, std::sqrt(0.5 * tx_real / energy(a_raw)));
    const auto b = scale(b_raw, std::sqrt(0.5 * tx_real / energy(b_raw)));
    const auto cb = dual_modulate(DualMessage{a, b, cfg.guard_hz}, cfg.f_c_hz);
    const auto out = dual_demodulate(cb, cfg.f_c_hz, lpf);
    const double tx_complex = energy(cb);
    const auto cb_sp = ctx.spectrum("dual_passband", cb);

    auto bands_occupied = [&](const Spectrum& sp) {
        int count = 0;
        if (fraction_near(sp, -cfg.f_c_hz, w) > 0.01) ++count;
        if (fraction_near(sp, cfg.f_c_hz, w) > 0.01) ++count;
        return count;
    };
    const double evm_a = evm_db(out.stream_a, a);
    const double evm_b = evm_db(out.stream_b, b);
    // Mirror-correlated bands carry one stream between them.
    const double real_corr = mirror_correlation(pb_sp);
    const double dual_corr = mirror_correlation(cb_sp);
    const int real_streams = bands_occupied(pb_sp) == 2 && real_corr > 0.9 ? 1 : 2;
    int dual_streams = bands_occupied(cb_sp) == 2 && dual_corr > 0.9 ? 1 : 2;
    if (!(evm_a < -40.0 && evm_b < -40.0)) dual_streams = 0;

    ctx.value("energy.real.baseband", energy(bb));
    ctx.value("energy.real.transmit", tx_real);
    ctx.value("energy.real.recovered_steady", energy(rec_ss));
    ctx.value("energy.complex.transmit", tx_complex);
    ctx.value("energy.complex.recovered_a_steady", energy(steady_state(out.stream_a)));
    ctx.value("energy.complex.recovered_b_steady", energy(steady_state(out.stream_b)));
    ctx.value("real.mirror_correlation", real_corr);
    ctx.value("complex.mirror_correlation", dual_corr);

    // The budget is split exactly; the transmitted total also carries the
    // small A/B cross term 2*Re(a*conj(b)*exp(-2iwt)).
    ctx.check("tx_budget_match_rel_err", relative_error(energy(a) + energy(b), tx_real),
              Threshold::less(1e-9));
    ctx.check("tx_energy_match_rel_err", relative_error(tx_complex, tx_real),
              Threshold::less(1e-3));
    ctx.check("real.bands_occupied", bands_occupied(pb_sp), Threshold::equal(2));
    ctx.check("real.independent_streams", real_streams, Threshold::equal(1));
    ctx.check("real.recovered_amplitude_factor", amplitude, Threshold::within(0.499, 0.501));
    ctx.check("real.recovered_energy_ratio", energy(rec_ss) / energy(bb_ss),
              Threshold::within(0.245, 0.255));
    ctx.check("complex.bands_occupied", bands_occupied(cb_sp), Threshold::equal(2));
    ctx.check("complex.independent_streams", dual_streams, Threshold::equal(2));
    ctx.check("complex.evm_a_db", evm_a, Threshold::less(-40.0));
    ctx.check("complex.evm_b_db", evm_b, Threshold::less(-40.0));
    ctx.check("complex.recovered_energy_ratio_a",
              energy(steady_state(out.stream_a)) / energy(trim(a, out.stream_a.edge_transient())),
              Threshold::within(0.98, 1.02));
    ctx.check("complex.recovered_energy_ratio_b",
              energy(steady_state(out.stream_b)) / energy(trim(b, out.stream_b.edge_transient())),
              Threshold::within(0.98, 1.02));
}

double handedness_code(Handedness h) {
    switch (h) {
        case Handedness::L: return -1.0;
        case Handedness::R: return 1.0;
        case Handedness::Linear: return 0.0;
    }
    return 0.0;
}

void run_polarization(RunContext& ctx) {
    const auto& cfg = ctx.cfg();
    const double fs = cfg.sample_rate_hz;
    const double f0 = cfg.f_c_hz;
    const std::size_t n = cfg.n_samples;
    const auto right = oscillator(CarrierConfig{f0, 0.0}, n, fs);
    const auto left = oscillator(CarrierConfig{-f0, 0.0}, n, fs);
    const auto linear = real_part(right);

    struct Case {
        const char* name;
        const ComplexSignal* signal;
        Handedness expected;
    };
    const Case cases[] = {{"rhc", &right, Handedness::R},
                          {"lhc", &left, Handedness::L},
                          {"linear", &linear, Handedness::Linear}};
    for (const auto& c : cases) {
        const auto sent = to_polarized(*c.signal);
        const auto received = transmit(sent, cfg.channel);
        const auto clean = detect_handedness(sent);
        const auto noisy = detect_handedness(received);
        const auto br = band_report(dft_two_sided(from_polarized(received)));
        ctx.label(std::string("handedness.") + c.name + ".sent", to_string(clean));
        ctx.label(std::string("handedness.") + c.name + ".received", to_string(noisy));
        ctx.value(std::string("band.") + c.name + "_received.l_fraction", br.l_fraction);
        ctx.value(std::string("band.") + c.name + "_received.r_fraction", br.r_fraction);
        ctx.check(std::string(c.name) + ".sent_handedness", handedness_code(clean),
                  Threshold::equal(handedness_code(c.expected)));
        ctx.check(std::string(c.name) + ".received_handedness", handedness_code(noisy),
                  Threshold::equal(handedness_code(c.expected)));
    }

    // A data-bearing R-complex signal through the same channel.
    const auto bb = make_baseband(cfg, cfg.seed);
    const CarrierConfig carrier{cfg.f_c_hz, 0.0};
    const auto cb = complex_modulate(bb, carrier);
    const auto sent = to_polarized(cb);
    const auto received = transmit(sent, cfg.channel);
    const auto rec = complex_demodulate(from_polarized(received), carrier);
    ctx.polarized("sent", sent);
    ctx.polarized("received", received);

    std::size_t mismatches = 0;
    const auto back = from_polarized(sent);
    for (std::size_t k = 0; k < cb.size(); ++k) mismatches += back[k] == cb[k] ? 0 : 1;
    ctx.value("energy.polarized_sent", energy(sent));
    ctx.value("energy.complex_sent", energy(cb));
    ctx.check("round_trip_mismatched_samples", static_cast<double>(mismatches),
              Threshold::equal(0.0));
    ctx.check("energy_equality_abs_diff", std::abs(energy(sent) - energy(cb)),
              Threshold::equal(0.0));
    ctx.check("received_handedness_data", handedness_code(detect_handedness(received)),
              Threshold::equal(handedness_code(Handedness::R)));
    // Noise adds 2*sigma^2 per sample against roughly unit signal power:
    // about -23 dB at the default sigma of 0.05.
    ctx.check("received_evm_db", evm_db(rec, bb), Threshold::less(-20.0));
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& cfg) {
    validate(cfg);
    RunContext ctx(cfg);
    switch (cfg.scenario) {
        case ScenarioId::Fig4: run_fig4(ctx); break;
        case ScenarioId::Fig5: run_fig5(ctx); break;
        case ScenarioId::Fig6: run_fig6(ctx); break;
        case ScenarioId::Fig7: run_fig7(ctx); break;
        case ScenarioId::Fig9: run_fig9(ctx); break;
        case ScenarioId::Fig10: run_fig10(ctx); break;
        case ScenarioId::GroupLaws: run_group_laws(ctx); break;
        case ScenarioId::Compare: run_compare(ctx); break;
        case ScenarioId::Polarization: run_polarization(ctx); break;
    }
    return ctx.finish();
}

RunReport compare_chains(const ScenarioConfig& cfg) {
    ScenarioConfig c = cfg;
    c.scenario = ScenarioId::Compare;
    return run_scenario(c);
}

}  // namespace negfreq
