// airviber: command-line front-end for the fan-vibration modem and channel
// simulator. Subcommands: transmit, simulate, receive, ber, spectrogram,
// force, jam.
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "airviber/channel.hpp"
#include "airviber/dsp.hpp"
#include "airviber/fft.hpp"
#include "airviber/framing.hpp"
#include "airviber/harness.hpp"
#include "airviber/modem.hpp"
#include "airviber/physics.hpp"
#include "airviber/schedule_io.hpp"
#include "airviber/trace_io.hpp"

using namespace airviber;

namespace {

std::string fmt_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

BitStream parse_bit_string(const std::string& s) {
    BitStream bits;
    for (char c : s) {
        if (c == '0' || c == '1') bits.push_back(static_cast<uint8_t>(c - '0'));
        else if (c != ' ' && c != '_')
            throw CLI::ValidationError("bits", std::string("invalid bit character '") + c + "'");
    }
    return bits;
}

std::string bits_as_string(const BitStream& bits) {
    std::string s;
    for (uint8_t b : bits) s.push_back(b ? '1' : '0');
    return s;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open " + path + " for writing");
    return file;
}

// shared option groups

void add_fsk_options(CLI::App* cmd, FskParams& p) {
    cmd->add_option("--rpm0", p.rpm0, "RPM for bit 0");
    cmd->add_option("--rpm1", p.rpm1, "RPM for bit 1");
    cmd->add_option("--rpm-base", p.rpm_base, "return-to-zero base RPM");
    cmd->add_option("--state-duration", p.state_duration, "seconds at the bit RPM");
    cmd->add_option("--bit-duration", p.bit_duration, "seconds per bit");
}

void add_framing_options(CLI::App* cmd, FramingConfig& f, std::string& preamble_str,
                         std::string& check_str) {
    cmd->add_option("--preamble", preamble_str, "preamble bit string (default 1010)");
    cmd->add_option("--payload-len", f.payload_len, "payload bits per frame");
    cmd->add_option("--check", check_str, "frame check: parity or crc8")
        ->check(CLI::IsMember({"parity", "crc8"}));
    cmd->add_option("--crc-poly", f.crc_polynomial, "CRC-8 polynomial");
}

void apply_framing_strings(FramingConfig& f, const std::string& preamble_str,
                           const std::string& check_str) {
    if (!preamble_str.empty()) f.preamble = parse_bit_string(preamble_str);
    if (check_str == "crc8") f.check_mode = CheckMode::Crc8;
    f.validate();
}

void add_demod_options(CLI::App* cmd, DemodConfig& d) {
    cmd->add_option("--sample-rate", d.sample_rate, "trace sample rate, Hz");
    cmd->add_option("--fft-size", d.fft_size, "FFT window length");
    cmd->add_option("--noverlap", d.noverlap, "window overlap, samples");
    cmd->add_option("--bit-time", d.bit_time, "seconds per bit");
    cmd->add_option("--f0", d.f0, "bit-0 carrier frequency, Hz");
    cmd->add_option("--f1", d.f1, "bit-1 carrier frequency, Hz");
    cmd->add_option("--f-base", d.f_base, "rest frequency, Hz (0 disables idle gating)");
    cmd->add_option("--highpass", d.highpass_hz, "high-pass cutoff, Hz");
}

void add_fan_options(CLI::App* cmd, FanModel& fan) {
    cmd->add_option("--spinup-tau", fan.spinup_tau, "fan time constant, seconds");
    cmd->add_option("--amplitude-gain", fan.amplitude_gain, "vibration gain, (m/s^2)/Hz^2");
    cmd->add_option("--rpm-max", fan.rpm_max, "fan speed ceiling, RPM");
}

void add_channel_options(CLI::App* cmd, ChannelParams& ch) {
    cmd->add_option("--resonance-hz", ch.resonance_hz, "surface resonance center, Hz");
    cmd->add_option("--resonance-gain", ch.resonance_gain, "surface resonance gain (0 = flat)");
    cmd->add_option("--resonance-bandwidth", ch.resonance_bandwidth, "resonance bandwidth, Hz");
    cmd->add_option("--quantization-step", ch.quantization_step,
                    "accelerometer quantization, m/s^2 (0 disables)");
}

std::vector<LocationProfile> load_profiles(const std::string& path) {
    if (path.empty()) return default_location_profiles();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open locations file " + path);
    return read_location_profiles(in);
}

double lookup_location(const std::vector<LocationProfile>& profiles, const std::string& label) {
    for (const auto& p : profiles)
        if (p.label == label) return p.snr_db;
    std::string known;
    for (const auto& p : profiles) {
        if (!known.empty()) known += ", ";
        known += p.label;
    }
    throw std::runtime_error("unknown location '" + label + "' (known: " + known + ")");
}

// subcommand payload structs + runners

int run_transmit(const std::string& text, const std::string& bit_str, int bits_per_char,
                 const std::string& mod, const FskParams& fsk, const AskParams& ask,
                 const FramingConfig& framing, const std::string& out_path) {
    BitStream payload;
    if (!text.empty()) payload = text_to_bits(text, bits_per_char);
    else if (!bit_str.empty()) payload = parse_bit_string(bit_str);
    if (payload.empty()) throw CLI::ValidationError("transmit", "no input: use --text or --bits");

    int pad_bits = 0;
    while (payload.size() % static_cast<size_t>(framing.payload_len) != 0) {
        payload.push_back(0);
        ++pad_bits;
    }

    BitStream tx;
    for (size_t at = 0; at < payload.size(); at += static_cast<size_t>(framing.payload_len)) {
        BitStream chunk(payload.begin() + at, payload.begin() + at + framing.payload_len);
        const BitStream f = frame(chunk, framing);
        tx.insert(tx.end(), f.begin(), f.end());
    }

    RpmSchedule schedule = mod == "ask" ? modulate_ask(tx, ask) : modulate_fsk(tx, fsk);
    std::ofstream file;
    write_schedule(schedule, pad_bits, open_out(file, out_path));
    std::cerr << "transmit: " << payload.size() << " payload bits (" << pad_bits << " pad), "
              << tx.size() << " framed bits, " << fmt_g9(schedule.total_duration()) << " s\n";
    return 0;
}

int run_simulate(const std::string& schedule_path, const std::string& out_path,
                 const std::string& location, const std::string& locations_path, double snr_db,
                 uint64_t noise_seed, uint64_t phase_seed, FanModel fan, ChannelParams ch) {
    if (!location.empty()) ch.snr_db = lookup_location(load_profiles(locations_path), location);
    else ch.snr_db = snr_db;
    ch.noise_seed = noise_seed;
    ch.phase_seed = phase_seed;

    RpmSchedule schedule = read_schedule_file(schedule_path);
    SampleTrace trace = transmit(schedule, fan, ch);
    std::ofstream file;
    write_trace(trace, open_out(file, out_path));
    std::cerr << "simulate: " << trace.samples.size() << " samples at " << ch.sample_rate
              << " Hz, snr_db=" << fmt_g9(ch.snr_db) << "\n";
    return 0;
}

int run_receive(const std::string& trace_path, const DemodConfig& demod,
                const FramingConfig& framing, bool as_text, int bits_per_char, int strip_pad) {
    SampleTrace trace = read_trace_file(trace_path);
    DemodResult rx = demodulate(trace, demod, framing.preamble);
    if (!rx.carrier_found) {
        std::cerr << "receive: no carrier\n";
        return 2;
    }

    const size_t flen = static_cast<size_t>(framing.framed_len());
    const size_t frames = rx.bits.size() / flen;
    if (rx.bits.size() % flen != 0)
        std::cerr << "receive: " << rx.bits.size() % flen << " trailing bits of a partial frame\n";

    BitStream all_payload;
    bool any_fail = false;
    for (size_t k = 0; k < frames; ++k) {
        BitStream chunk(rx.bits.begin() + k * flen, rx.bits.begin() + (k + 1) * flen);
        auto [payload, ok] = deframe(chunk, framing);
        std::cout << "frame " << k << ": payload=" << bits_as_string(payload)
                  << " check=" << (ok ? "ok" : "FAIL") << "\n";
        all_payload.insert(all_payload.end(), payload.begin(), payload.end());
        if (!ok) any_fail = true;
    }
    if (frames == 0) {
        std::cerr << "receive: carrier found but no complete frame\n";
        return 1;
    }
    if (strip_pad > 0 && static_cast<size_t>(strip_pad) < all_payload.size())
        all_payload.resize(all_payload.size() - static_cast<size_t>(strip_pad));
    if (as_text) std::cout << "text: " << bits_to_text(all_payload, bits_per_char) << "\n";
    return any_fail ? 1 : 0;
}

int run_ber_cmd(BerConfig cfg, const std::vector<double>& snrs,
                const std::vector<std::string>& locations, const std::string& locations_path,
                bool with_jammer, const JammerParams& jammer, const std::string& out_path) {
    cfg.channel.sample_rate = cfg.demod.sample_rate;
    for (double s : snrs) cfg.points.push_back({fmt_g9(s) + "dB", s});
    if (!locations.empty()) {
        auto profiles = load_profiles(locations_path);
        for (const auto& label : locations) cfg.points.push_back({label, lookup_location(profiles, label)});
    }
    if (with_jammer) cfg.jammer = jammer;

    BerReport report = run_ber(cfg);
    std::ofstream file;
    write_ber_report(report, open_out(file, out_path));
    return 0;
}

int run_spectrogram(const std::string& trace_path, int fft_size, int noverlap,
                    const std::string& out_path, const std::string& psd_path) {
    SampleTrace trace = read_trace_file(trace_path);
    if (fft_size <= 0 || noverlap < 0 || noverlap >= fft_size)
        throw std::runtime_error("spectrogram: need fft_size > 0 and 0 <= noverlap < fft_size");
    if (trace.samples.size() < static_cast<size_t>(fft_size))
        throw std::runtime_error("spectrogram: trace shorter than one FFT window");

    const auto sig = magnitude_signal(trace);
    const size_t n = static_cast<size_t>(fft_size);
    const size_t hop = static_cast<size_t>(fft_size - noverlap);
    const size_t bins = n / 2 + 1;
    const double bin_hz = static_cast<double>(trace.sample_rate_hz) / fft_size;

    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "time_s";
    for (size_t k = 0; k < bins; ++k) out << ',' << fmt_g9(k * bin_hz);
    out << "\n";
    for (size_t start = 0; start + n <= sig.size(); start += hop) {
        auto spec = fft(std::span<const double>(sig).subspan(start, n));
        const double center = (start + n / 2.0) / trace.sample_rate_hz;
        out << fmt_g9(center);
        for (size_t k = 0; k < bins; ++k) out << ',' << fmt_g9(std::abs(spec[k]));
        out << "\n";
    }

    if (!psd_path.empty()) {
        auto psd = welch_psd(sig, fft_size);
        std::ofstream pfile;
        std::ostream& pout = open_out(pfile, psd_path);
        pout << "freq_hz,psd\n";
        for (size_t k = 0; k < psd.size(); ++k)
            pout << fmt_g9(k * bin_hz) << ',' << fmt_g9(psd[k]) << "\n";
    }
    return 0;
}

int run_force(double mass, double radius, double rpm, bool oz, bool inches) {
    if (oz) mass *= 0.0283495;        // ounces -> kg
    if (inches) radius *= 0.0254;     // inches -> m
    std::cout << fmt_g9(centrifugal_force(mass, radius, rpm)) << "\n";
    return 0;
}

int run_jam(const std::string& schedule_path, const std::string& out_path,
            const JammerParams& jammer) {
    int pad_bits = 0;
    RpmSchedule schedule = read_schedule_file(schedule_path, &pad_bits);
    RpmSchedule jammed = apply_jammer(schedule, jammer);
    std::ofstream file;
    write_schedule(jammed, pad_bits, open_out(file, out_path));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"air-viber: fan-vibration covert-channel modem and channel simulator"};
    app.require_subcommand(1);
    app.set_config("--config");

    // transmit
    auto* tx = app.add_subcommand("transmit", "frame and modulate data into an RPM schedule");
    std::string tx_text, tx_bits, tx_mod = "fsk", tx_out = "-";
    int tx_bpc = 7;
    FskParams tx_fsk;
    AskParams tx_ask;
    FramingConfig tx_framing;
    std::string tx_preamble, tx_check = "parity";
    tx->add_option("--text", tx_text, "payload as text");
    tx->add_option("--bits", tx_bits, "payload as a bit string");
    tx->add_option("--bits-per-char", tx_bpc, "7 or 8 bits per text character");
    tx->add_option("--mod", tx_mod, "modulation")->check(CLI::IsMember({"fsk", "ask"}));
    tx->add_option("-o,--out", tx_out, "schedule file ('-' for stdout)");
    add_fsk_options(tx, tx_fsk);
    tx->add_option("--ask-rpm0", tx_ask.rpm0, "ASK RPM for bit 0");
    tx->add_option("--ask-rpm1", tx_ask.rpm1, "ASK RPM for bit 1");
    add_framing_options(tx, tx_framing, tx_preamble, tx_check);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run a schedule through the channel into a trace");
    std::string sim_schedule, sim_out = "-", sim_location, sim_locations;
    double sim_snr = std::numeric_limits<double>::infinity();
    uint64_t sim_noise_seed = 1, sim_phase_seed = 1;
    FanModel sim_fan;
    ChannelParams sim_ch;
    sim->add_option("-s,--schedule", sim_schedule, "schedule file")->required();
    sim->add_option("-o,--out", sim_out, "trace file ('-' for stdout)");
    sim->add_option("--location", sim_location, "location label for the SNR profile");
    sim->add_option("--locations-file", sim_locations, "CSV of label,snr_db profiles");
    sim->add_option("--snr", sim_snr, "target SNR in dB (default noiseless)");
    sim->add_option("--noise-seed", sim_noise_seed, "noise RNG seed");
    sim->add_option("--phase-seed", sim_phase_seed, "oscillator phase seed");
    sim->add_option("--sample-rate", sim_ch.sample_rate, "output sample rate, Hz");
    add_fan_options(sim, sim_fan);
    add_channel_options(sim, sim_ch);

    // receive
    auto* rx = app.add_subcommand("receive", "demodulate and deframe a trace");
    std::string rx_trace;
    DemodConfig rx_demod;
    FramingConfig rx_framing;
    std::string rx_preamble, rx_check = "parity";
    bool rx_text = false;
    int rx_bpc = 7, rx_strip = 0;
    rx->add_option("-t,--trace", rx_trace, "trace file")->required();
    rx->add_flag("--text", rx_text, "decode payload as text");
    rx->add_option("--bits-per-char", rx_bpc, "7 or 8 bits per text character");
    rx->add_option("--strip-pad", rx_strip, "drop this many trailing pad bits");
    add_demod_options(rx, rx_demod);
    add_framing_options(rx, rx_framing, rx_preamble, rx_check);

    // ber
    auto* ber = app.add_subcommand("ber", "Monte-Carlo bit-error-rate sweep");
    BerConfig ber_cfg;
    std::vector<double> ber_snrs;
    std::vector<std::string> ber_locations;
    std::string ber_locations_file, ber_out = "-";
    JammerParams ber_jam;
    bool ber_with_jam = false;
    std::string ber_preamble, ber_check = "parity";
    ber->add_option("--n-bits", ber_cfg.n_bits, "payload bits per trial");
    ber->add_option("--trials", ber_cfg.trials, "trials per point");
    ber->add_option("--seed", ber_cfg.seed, "master seed");
    ber->add_option("--snr", ber_snrs, "SNR points in dB");
    ber->add_option("--location", ber_locations, "location labels as points");
    ber->add_option("--locations-file", ber_locations_file, "CSV of label,snr_db profiles");
    ber->add_option("-o,--out", ber_out, "report file ('-' for stdout)");
    ber->add_flag("--jam", ber_with_jam, "apply the fan-speed jammer");
    ber->add_option("--jam-threshold", ber_jam.threshold, "jammer RPM threshold");
    ber->add_option("--jam-duration", ber_jam.duration, "jammer perturbation seconds");
    ber->add_option("--jam-interval", ber_jam.interval, "jammer rest seconds");
    ber->add_option("--jam-seed", ber_jam.seed, "jammer RNG seed");
    add_fsk_options(ber, ber_cfg.fsk);
    add_demod_options(ber, ber_cfg.demod);
    add_framing_options(ber, ber_cfg.framing, ber_preamble, ber_check);
    add_fan_options(ber, ber_cfg.fan);
    add_channel_options(ber, ber_cfg.channel);

    // spectrogram
    auto* spec = app.add_subcommand("spectrogram", "export STFT matrix and Welch PSD as CSV");
    std::string spec_trace, spec_out = "-", spec_psd;
    int spec_fft = 256, spec_noverlap = 156;
    spec->add_option("-t,--trace", spec_trace, "trace file")->required();
    spec->add_option("--fft-size", spec_fft, "FFT window length");
    spec->add_option("--noverlap", spec_noverlap, "window overlap, samples");
    spec->add_option("-o,--out", spec_out, "matrix CSV ('-' for stdout)");
    spec->add_option("--psd", spec_psd, "also write a Welch PSD CSV here");

    // force
    auto* force = app.add_subcommand("force", "centrifugal force of a rotating unbalance");
    double f_mass = 0.0, f_radius = 0.0, f_rpm = 0.0;
    bool f_oz = false, f_in = false;
    force->add_option("--mass", f_mass, "unbalance mass (kg, or oz with --oz)")->required();
    force->add_option("--radius", f_radius, "radius (m, or inches with --in)")->required();
    force->add_option("--rpm", f_rpm, "rotation speed")->required();
    force->add_flag("--oz", f_oz, "mass is in ounces");
    force->add_flag("--in", f_in, "radius is in inches");

    // jam
    auto* jam = app.add_subcommand("jam", "overlay jammer perturbations on a schedule");
    std::string jam_schedule, jam_out = "-";
    JammerParams jam_params;
    jam->add_option("-s,--schedule", jam_schedule, "schedule file")->required();
    jam->add_option("-o,--out", jam_out, "output schedule ('-' for stdout)");
    jam->add_option("--threshold", jam_params.threshold, "RPM threshold");
    jam->add_option("--duration", jam_params.duration, "perturbation seconds");
    jam->add_option("--interval", jam_params.interval, "rest seconds");
    jam->add_option("--seed", jam_params.seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tx->parsed()) {
            apply_framing_strings(tx_framing, tx_preamble, tx_check);
            return run_transmit(tx_text, tx_bits, tx_bpc, tx_mod, tx_fsk, tx_ask, tx_framing,
                                tx_out);
        }
        if (sim->parsed())
            return run_simulate(sim_schedule, sim_out, sim_location, sim_locations, sim_snr,
                                sim_noise_seed, sim_phase_seed, sim_fan, sim_ch);
        if (rx->parsed()) {
            apply_framing_strings(rx_framing, rx_preamble, rx_check);
            return run_receive(rx_trace, rx_demod, rx_framing, rx_text, rx_bpc, rx_strip);
        }
        if (ber->parsed()) {
            apply_framing_strings(ber_cfg.framing, ber_preamble, ber_check);
            return run_ber_cmd(ber_cfg, ber_snrs, ber_locations, ber_locations_file, ber_with_jam,
                               ber_jam, ber_out);
        }
        if (spec->parsed()) return run_spectrogram(spec_trace, spec_fft, spec_noverlap, spec_out, spec_psd);
        if (force->parsed()) return run_force(f_mass, f_radius, f_rpm, f_oz, f_in);
        if (jam->parsed()) return run_jam(jam_schedule, jam_out, jam_params);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
