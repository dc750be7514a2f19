#include "airviber/harness.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace airviber {

namespace {

std::string fmt_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string echo_params(const BerConfig& c) {
    std::ostringstream os;
    os << "n_bits=" << c.n_bits << "\n"
       << "trials=" << c.trials << "\n"
       << "seed=" << c.seed << "\n"
       << "fsk.rpm0=" << fmt_g9(c.fsk.rpm0) << "\n"
       << "fsk.rpm1=" << fmt_g9(c.fsk.rpm1) << "\n"
       << "fsk.rpm_base=" << fmt_g9(c.fsk.rpm_base) << "\n"
       << "fsk.state_duration=" << fmt_g9(c.fsk.state_duration) << "\n"
       << "fsk.bit_duration=" << fmt_g9(c.fsk.bit_duration) << "\n"
       << "demod.sample_rate=" << c.demod.sample_rate << "\n"
       << "demod.fft_size=" << c.demod.fft_size << "\n"
       << "demod.noverlap=" << c.demod.noverlap << "\n"
       << "demod.bit_time=" << fmt_g9(c.demod.bit_time) << "\n"
       << "demod.f0=" << fmt_g9(c.demod.f0) << "\n"
       << "demod.f1=" << fmt_g9(c.demod.f1) << "\n"
       << "demod.f_base=" << fmt_g9(c.demod.f_base) << "\n"
       << "demod.highpass_hz=" << fmt_g9(c.demod.highpass_hz) << "\n"
       << "framing.payload_len=" << c.framing.payload_len << "\n"
       << "framing.check_mode=" << (c.framing.check_mode == CheckMode::Parity ? "parity" : "crc8")
       << "\n"
       << "fan.spinup_tau=" << fmt_g9(c.fan.spinup_tau) << "\n"
       << "fan.amplitude_gain=" << fmt_g9(c.fan.amplitude_gain) << "\n"
       << "channel.resonance_hz=" << fmt_g9(c.channel.resonance_hz) << "\n"
       << "channel.resonance_gain=" << fmt_g9(c.channel.resonance_gain) << "\n"
       << "channel.quantization_step=" << fmt_g9(c.channel.quantization_step) << "\n";
    if (c.jammer) {
        os << "jammer.threshold=" << fmt_g9(c.jammer->threshold) << "\n"
           << "jammer.duration=" << fmt_g9(c.jammer->duration) << "\n"
           << "jammer.interval=" << fmt_g9(c.jammer->interval) << "\n"
           << "jammer.seed=" << c.jammer->seed << "\n";
    }
    return os.str();
}

}  // namespace

BerReport run_ber(const BerConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run_ber: trials must be >= 1");
    if (config.n_bits < 1) throw std::invalid_argument("run_ber: n_bits must be >= 1");
    if (config.points.empty()) throw std::invalid_argument("run_ber: no SNR points given");
    config.framing.validate();
    config.demod.validate();

    const int plen = config.framing.payload_len;
    const int frames_per_trial = (config.n_bits + plen - 1) / plen;
    const int framed_len = config.framing.framed_len();

    BerReport report;
    report.params_echo = echo_params(config);

    for (const auto& point : config.points) {
        BerRow row;
        row.label = point.label;
        row.snr_db = point.snr_db;
        row.trials = config.trials;

        for (int trial = 0; trial < config.trials; ++trial) {
            // common random numbers across SNR points: seeds depend only on
            // the trial index, so every point sees the same payloads/noise
            std::mt19937_64 payload_rng(config.seed * 0x9e3779b97f4a7c15ull + trial);
            std::uniform_int_distribution<int> ubit(0, 1);

            std::vector<BitStream> payloads(frames_per_trial);
            BitStream tx_bits;
            for (auto& p : payloads) {
                p.resize(plen);
                for (auto& b : p) b = static_cast<uint8_t>(ubit(payload_rng));
                const BitStream f = frame(p, config.framing);
                tx_bits.insert(tx_bits.end(), f.begin(), f.end());
            }

            RpmSchedule schedule = modulate_fsk(tx_bits, config.fsk);
            if (config.jammer) {
                JammerParams jp = *config.jammer;
                jp.seed = config.jammer->seed + trial;
                schedule = apply_jammer(schedule, jp);
            }

            ChannelParams ch = config.channel;
            ch.snr_db = point.snr_db;
            ch.noise_seed = config.seed + 1000003ull * (trial + 1);
            ch.phase_seed = config.seed + 7000003ull * (trial + 1);
            const SampleTrace trace = transmit(schedule, config.fan, ch);

            const DemodResult rx = demodulate(trace, config.demod, config.framing.preamble);

            for (int k = 0; k < frames_per_trial; ++k) {
                ++row.frames_sent;
                row.bits_sent += plen;
                const size_t begin = static_cast<size_t>(k) * framed_len;
                const size_t end = begin + framed_len;
                if (!rx.carrier_found || rx.bits.size() < end) {
                    // unrecovered frame: charge the coin-flip error rate
                    row.bit_errors += plen / 2;
                    continue;
                }
                ++row.frames_detected;
                BitStream chunk(rx.bits.begin() + begin, rx.bits.begin() + end);
                auto [payload, ok] = deframe(chunk, config.framing);
                if (ok) ++row.frames_check_ok;
                for (int i = 0; i < plen; ++i)
                    if (payload[static_cast<size_t>(i)] != payloads[k][static_cast<size_t>(i)])
                        ++row.bit_errors;
            }
        }
        row.ber = row.bits_sent > 0
                      ? static_cast<double>(row.bit_errors) / static_cast<double>(row.bits_sent)
                      : 0.0;
        report.rows.push_back(std::move(row));
    }
    return report;
}

void write_ber_report(const BerReport& report, std::ostream& out) {
    out << "# air-viber-ber v1\n";
    out << report.params_echo;
    out << "label,snr_db,trials,bits_sent,bit_errors,ber,frames_sent,frames_detected,frames_check_ok\n";
    for (const auto& r : report.rows) {
        out << r.label << ',' << fmt_g9(r.snr_db) << ',' << r.trials << ',' << r.bits_sent << ','
            << r.bit_errors << ',' << fmt_g9(r.ber) << ',' << r.frames_sent << ','
            << r.frames_detected << ',' << r.frames_check_ok << "\n";
    }
}

BitStream text_to_bits(const std::string& text, int bits_per_char) {
    if (bits_per_char != 7 && bits_per_char != 8)
        throw std::invalid_argument("text_to_bits: bits_per_char must be 7 or 8");
    BitStream bits;
    bits.reserve(text.size() * static_cast<size_t>(bits_per_char));
    for (unsigned char c : text) {
        if (bits_per_char == 7 && c > 0x7f)
            throw std::invalid_argument("text_to_bits: non-ASCII character in 7-bit mode");
        for (int i = bits_per_char - 1; i >= 0; --i) bits.push_back((c >> i) & 1);
    }
    return bits;
}

std::string bits_to_text(const BitStream& bits, int bits_per_char) {
    if (bits_per_char != 7 && bits_per_char != 8)
        throw std::invalid_argument("bits_to_text: bits_per_char must be 7 or 8");
    std::string text;
    for (size_t i = 0; i + static_cast<size_t>(bits_per_char) <= bits.size();
         i += static_cast<size_t>(bits_per_char)) {
        unsigned value = 0;
        for (int j = 0; j < bits_per_char; ++j) value = (value << 1) | bits[i + j];
        text.push_back(static_cast<char>(value));
    }
    return text;
}

}  // namespace airviber
