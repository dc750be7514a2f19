#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "airviber/channel.hpp"
#include "airviber/framing.hpp"
#include "airviber/modem.hpp"

namespace airviber {

struct BerConfig {
    int n_bits = 32;   // payload bits per trial, rounded up to whole frames
    int trials = 1;
    std::vector<LocationProfile> points;  // one BER row per entry
    uint64_t seed = 1;
    FskParams fsk;
    DemodConfig demod;
    FramingConfig framing;
    FanModel fan;
    ChannelParams channel;  // snr_db is overridden per point
    std::optional<JammerParams> jammer;
};

struct BerRow {
    std::string label;
    double snr_db = 0.0;
    int trials = 0;
    long bits_sent = 0;
    long bit_errors = 0;
    double ber = 0.0;
    int frames_sent = 0;
    int frames_detected = 0;
    int frames_check_ok = 0;
};

struct BerReport {
    std::vector<BerRow> rows;
    std::string params_echo;  // key=value lines, enough to re-run the experiment
};

// Random payloads -> frame -> modulate -> channel -> demodulate -> deframe,
// payload bits compared against ground truth. A frame the receiver never
// recovers counts its payload at the coin-flip error rate (payload_len / 2).
BerReport run_ber(const BerConfig& config);

void write_ber_report(const BerReport& report, std::ostream& out);

// 7-bit (or 8-bit) ASCII, MSB first per character.
BitStream text_to_bits(const std::string& text, int bits_per_char = 7);
std::string bits_to_text(const BitStream& bits, int bits_per_char = 7);

}  // namespace airviber
