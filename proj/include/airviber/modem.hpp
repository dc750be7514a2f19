#pragma once

#include <optional>
#include <vector>

#include "airviber/types.hpp"

namespace airviber {

// Return-to-zero binary FSK: each bit holds rpm0/rpm1 for state_duration,
// then rpm_base for the rest of bit_duration.
struct FskParams {
    double rpm0 = 2600.0;
    double rpm1 = 3260.0;
    double rpm_base = 3030.0;
    double state_duration = 0.5;
    double bit_duration = 2.0;

    void validate() const;
};

struct AskParams {
    double rpm0 = 2000.0;
    double rpm1 = 2600.0;
    double bit_duration = 2.0;

    void validate() const;
};

// Sliding-window FFT demodulator settings. f_base > 0 enables gating of
// windows dominated by the return-to-zero rest frequency.
struct DemodConfig {
    int sample_rate = 500;
    int fft_size = 256;
    int noverlap = 156;
    double bit_time = 2.0;
    double f0 = 2600.0 / 60.0;
    double f1 = 3260.0 / 60.0;
    double f_base = 3030.0 / 60.0;  // 0 disables idle gating
    double highpass_hz = 5.0;

    int hop() const { return fft_size - noverlap; }
    int samples_per_bit() const;  // decision windows per bit
    int bin_of(double freq_hz) const;
    void validate() const;
};

// Per-window spectral amplitudes at the configured bins.
struct WindowAmps {
    double f0 = 0.0;
    double f1 = 0.0;
    double base = 0.0;
};

enum class Decision : uint8_t { Zero = 0, One = 1, Idle = 2 };

struct DemodResult {
    BitStream bits;
    bool carrier_found = false;
    size_t enable_offset = 0;  // window index of the detected frame start
};

RpmSchedule modulate_fsk(const BitStream& bits, const FskParams& params);
RpmSchedule modulate_ask(const BitStream& bits, const AskParams& params);

// Vector magnitude -> high-pass -> sliding |FFT| at the f0/f1 (and base)
// bins; hop = fft_size - noverlap. Empty when the trace is shorter than
// one window.
std::vector<WindowAmps> stft_stream(const SampleTrace& trace, const DemodConfig& config);

// 1 if amplitude(f1) > amplitude(f0) else 0; Idle when the base bin
// dominates both (gated out of the bit vote).
Decision decide(const WindowAmps& amps, bool gate_base);
std::vector<Decision> window_decisions(const SampleTrace& trace, const DemodConfig& config);

// Slides the per-window expansion of the preamble over the decision stream;
// a position qualifies when >= 80% of windows either match the expected bit
// or are Idle. Returns the best offset of the first qualifying run.
std::optional<size_t> detect_enable(const std::vector<Decision>& decisions, int samples_per_bit,
                                    const BitStream& preamble);

DemodResult demodulate(const SampleTrace& trace, const DemodConfig& config,
                       const BitStream& preamble = {1, 0, 1, 0});

}  // namespace airviber
