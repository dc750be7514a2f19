#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace airviber {

// Binary symbols, values restricted to 0/1.
using BitStream = std::vector<uint8_t>;

struct RpmSegment {
    double duration_s = 0.0;
    double rpm = 0.0;
};

// Piecewise-constant fan-speed command timeline. Segments are contiguous:
// total duration is the sum of segment durations, no gaps.
struct RpmSchedule {
    double rpm_max = 3260.0;
    std::vector<RpmSegment> segments;

    void append(double duration_s, double rpm) {
        if (duration_s <= 0.0)
            throw std::invalid_argument("RpmSchedule: segment duration must be > 0");
        if (rpm < 0.0 || rpm > rpm_max)
            throw std::invalid_argument("RpmSchedule: rpm outside [0, rpm_max]");
        segments.push_back({duration_s, rpm});
    }

    double total_duration() const {
        double t = 0.0;
        for (const auto& s : segments) t += s.duration_s;
        return t;
    }
};

struct Sample {
    double ax = 0.0;
    double ay = 0.0;
    double az = 0.0;
};

// Fixed-rate 3-axis acceleration trace in m/s^2.
struct SampleTrace {
    int sample_rate_hz = 500;
    double quantization_step = 0.0;  // 0 means unquantized
    std::vector<Sample> samples;
};

enum class CheckMode { Parity, Crc8 };

struct Frame {
    BitStream preamble;
    BitStream payload;
    BitStream check;
    CheckMode check_mode = CheckMode::Parity;
};

// Magnitude spectrum with uniform bin spacing bin_hz = sample_rate / fft_size.
struct Spectrum {
    double bin_hz = 0.0;
    std::vector<double> magnitudes;
};

}  // namespace airviber
