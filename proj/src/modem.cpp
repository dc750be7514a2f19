#include "airviber/modem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "airviber/dsp.hpp"
#include "airviber/fft.hpp"

namespace airviber {

void FskParams::validate() const {
    if (rpm0 == rpm1) throw std::invalid_argument("FskParams: rpm0 and rpm1 must differ");
    if (rpm_base == rpm0 || rpm_base == rpm1)
        throw std::invalid_argument("FskParams: rpm_base must differ from rpm0/rpm1");
    if (!(state_duration > 0.0 && state_duration < bit_duration))
        throw std::invalid_argument("FskParams: need 0 < state_duration < bit_duration");
}

void AskParams::validate() const {
    if (rpm0 == rpm1) throw std::invalid_argument("AskParams: rpm0 and rpm1 must differ");
    if (bit_duration <= 0.0) throw std::invalid_argument("AskParams: bit_duration must be > 0");
}

int DemodConfig::samples_per_bit() const {
    return static_cast<int>(std::lround(sample_rate * bit_time / hop()));
}

int DemodConfig::bin_of(double freq_hz) const {
    return static_cast<int>(std::lround(fft_size * freq_hz / sample_rate));
}

void DemodConfig::validate() const {
    if (sample_rate <= 0) throw std::invalid_argument("DemodConfig: sample_rate must be > 0");
    if (fft_size <= 0) throw std::invalid_argument("DemodConfig: fft_size must be > 0");
    if (noverlap < 0 || noverlap >= fft_size)
        throw std::invalid_argument("DemodConfig: need 0 <= noverlap < fft_size");
    if (fft_size > sample_rate * bit_time)
        throw std::invalid_argument("DemodConfig: fft_size exceeds one bit of samples");
    if (f0 >= sample_rate / 2.0 || f1 >= sample_rate / 2.0)
        throw std::invalid_argument("DemodConfig: f0/f1 must be below Nyquist");
    if (bin_of(f0) == bin_of(f1))
        throw std::invalid_argument("DemodConfig: f0 and f1 collapse to the same FFT bin");
}

RpmSchedule modulate_fsk(const BitStream& bits, const FskParams& params) {
    params.validate();
    if (bits.empty()) throw std::invalid_argument("modulate_fsk: empty bit stream");
    RpmSchedule schedule;
    for (uint8_t bit : bits) {
        schedule.append(params.state_duration, bit ? params.rpm1 : params.rpm0);
        schedule.append(params.bit_duration - params.state_duration, params.rpm_base);
    }
    return schedule;
}

RpmSchedule modulate_ask(const BitStream& bits, const AskParams& params) {
    params.validate();
    if (bits.empty()) throw std::invalid_argument("modulate_ask: empty bit stream");
    RpmSchedule schedule;
    for (uint8_t bit : bits)
        schedule.append(params.bit_duration, bit ? params.rpm1 : params.rpm0);
    return schedule;
}

std::vector<WindowAmps> stft_stream(const SampleTrace& trace, const DemodConfig& config) {
    config.validate();
    if (trace.sample_rate_hz != config.sample_rate)
        throw std::invalid_argument("stft_stream: trace sample rate does not match config");

    std::vector<WindowAmps> out;
    const size_t n = trace.samples.size();
    const size_t fft_n = static_cast<size_t>(config.fft_size);
    if (n < fft_n) return out;

    auto mag = magnitude_signal(trace);
    auto sig = highpass(mag, config.highpass_hz, config.sample_rate);

    const int bin0 = config.bin_of(config.f0);
    const int bin1 = config.bin_of(config.f1);
    const int binb = config.f_base > 0.0 ? config.bin_of(config.f_base) : -1;
    const size_t hop = static_cast<size_t>(config.hop());

    for (size_t start = 0; start + fft_n <= n; start += hop) {
        auto spec = fft(std::span<const double>(sig).subspan(start, fft_n));
        WindowAmps amps;
        amps.f0 = std::abs(spec[bin0]);
        amps.f1 = std::abs(spec[bin1]);
        if (binb >= 0) amps.base = std::abs(spec[binb]);
        out.push_back(amps);
    }
    return out;
}

Decision decide(const WindowAmps& amps, bool gate_base) {
    if (gate_base && amps.base > amps.f0 && amps.base > amps.f1) return Decision::Idle;
    return amps.f1 > amps.f0 ? Decision::One : Decision::Zero;
}

std::vector<Decision> window_decisions(const SampleTrace& trace, const DemodConfig& config) {
    const bool gate = config.f_base > 0.0;
    std::vector<Decision> decisions;
    for (const auto& amps : stft_stream(trace, config)) decisions.push_back(decide(amps, gate));
    return decisions;
}

std::optional<size_t> detect_enable(const std::vector<Decision>& decisions, int samples_per_bit,
                                    const BitStream& preamble) {
    if (samples_per_bit < 3)
        throw std::invalid_argument("detect_enable: samples_per_bit must be >= 3");
    if (preamble.empty()) throw std::invalid_argument("detect_enable: empty preamble");

    const size_t span = preamble.size() * static_cast<size_t>(samples_per_bit);
    if (decisions.size() < span) return std::nullopt;

    // Return-to-zero template: the first quarter of each bit period carries
    // the bit's carrier, the rest sits at the base frequency and shows up as
    // Idle. Streams without Idle decisions (gating disabled) fall back to
    // plain expansion matching.
    const size_t state_zone =
        std::max<size_t>(1, static_cast<size_t>(std::lround(samples_per_bit * 0.25)));

    constexpr double kThreshold = 0.8;
    std::optional<size_t> best;
    double best_score = 0.0;
    for (size_t off = 0; off + span <= decisions.size(); ++off) {
        bool any_idle = false;
        for (size_t i = 0; i < span && !any_idle; ++i)
            any_idle = decisions[off + i] == Decision::Idle;

        size_t agree = 0;
        for (size_t i = 0; i < span; ++i) {
            const Decision d = decisions[off + i];
            const uint8_t expect = preamble[i / samples_per_bit];
            const bool in_state = i % samples_per_bit < state_zone;
            bool match;
            if (!any_idle)
                match = static_cast<uint8_t>(d) == expect;
            else if (in_state)
                match = d == Decision::Idle || static_cast<uint8_t>(d) == expect;
            else
                match = d == Decision::Idle;
            if (match) ++agree;
        }
        const double score = static_cast<double>(agree) / static_cast<double>(span);
        if (score >= kThreshold) {
            // take the best offset within the first qualifying run
            if (!best || score > best_score) {
                best = off;
                best_score = score;
            }
        } else if (best) {
            break;
        }
    }
    return best;
}

DemodResult demodulate(const SampleTrace& trace, const DemodConfig& config,
                       const BitStream& preamble) {
    config.validate();
    const int spb = config.samples_per_bit();
    if (spb < 3) throw std::invalid_argument("demodulate: fewer than 3 windows per bit");

    DemodResult result;
    auto decisions = window_decisions(trace, config);
    auto offset = detect_enable(decisions, spb, preamble);
    if (!offset) return result;  // no carrier

    result.carrier_found = true;
    result.enable_offset = *offset;
    for (size_t start = *offset; start < decisions.size(); start += static_cast<size_t>(spb)) {
        const size_t group = std::min(static_cast<size_t>(spb), decisions.size() - start);
        int ones = 0, zeros = 0;
        for (size_t i = 0; i < group; ++i) {
            const Decision d = decisions[start + i];
            if (d == Decision::One) ++ones;
            else if (d == Decision::Zero) ++zeros;
        }
        // the trailing partial group votes too; the last bit's windows run
        // past the end of the trace and would otherwise be lost
        result.bits.push_back(ones > zeros ? 1 : 0);  // tie breaks to 0
    }
    return result;
}

}  // namespace airviber
