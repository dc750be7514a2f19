#include "airviber/channel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "airviber/dsp.hpp"

namespace airviber {

namespace {

constexpr int kCalibrationFft = 256;
constexpr double kBandLowHz = 10.0;
constexpr double kBandHighHz = 60.0;

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty set");
    const size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    return v[mid];
}

// median PSD over the 10-60 Hz band, excluding +/- exclude bins around
// exclude_bin (pass a negative bin to keep the whole band)
double band_noise_floor(const std::vector<double>& psd, double bin_hz, int exclude_bin) {
    std::vector<double> band;
    for (size_t k = 0; k < psd.size(); ++k) {
        const double f = k * bin_hz;
        if (f < kBandLowHz || f > kBandHighHz) continue;
        if (exclude_bin >= 0 && std::abs(static_cast<int>(k) - exclude_bin) <= 2) continue;
        band.push_back(psd[k]);
    }
    return median(band);
}

}  // namespace

void ChannelParams::validate() const {
    if (resonance_bandwidth <= 0.0)
        throw std::invalid_argument("ChannelParams: resonance_bandwidth must be > 0");
    if (resonance_gain < 0.0)
        throw std::invalid_argument("ChannelParams: resonance_gain must be >= 0");
    if (sample_rate <= 0) throw std::invalid_argument("ChannelParams: sample_rate must be > 0");
    if (quantization_step < 0.0)
        throw std::invalid_argument("ChannelParams: quantization_step must be >= 0");
}

void JammerParams::validate() const {
    if (threshold < 0.0) throw std::invalid_argument("JammerParams: threshold must be >= 0");
    if (duration <= 0.0 || interval <= 0.0)
        throw std::invalid_argument("JammerParams: duration and interval must be > 0");
}

double resonance_gain_at(double freq_hz, const ChannelParams& params) {
    const double d = (freq_hz - params.resonance_hz) / params.resonance_bandwidth;
    return 1.0 + params.resonance_gain / (1.0 + d * d);
}

SampleTrace transmit(const RpmSchedule& schedule, const FanModel& fan,
                     const ChannelParams& params) {
    params.validate();
    const auto rpm = rpm_response(schedule, fan, params.sample_rate);
    SampleTrace trace = synthesize_vibration(rpm, fan, params.sample_rate, params.phase_seed);

    if (params.resonance_gain > 0.0) {
        for (size_t i = 0; i < trace.samples.size(); ++i) {
            const double g = resonance_gain_at(rpm[i] / 60.0, params);
            trace.samples[i].az = 9.81 + g * (trace.samples[i].az - 9.81);
        }
    }

    if (std::isfinite(params.snr_db)) {
        const size_t n = trace.samples.size();
        std::mt19937_64 rng(params.noise_seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> nx(n), ny(n), nz(n);
        for (size_t i = 0; i < n; ++i) {
            nx[i] = normal(rng);
            ny[i] = normal(rng);
            nz[i] = normal(rng);
        }

        // calibrate the noise scale against the same Welch estimator that
        // measure_snr uses: carrier power from the clean signal, per-bin
        // noise power from the unit-variance noise realization
        const auto mag = magnitude_signal(trace);
        const auto psd_sig = welch_psd(mag, kCalibrationFft);
        const double bin_hz = static_cast<double>(params.sample_rate) / kCalibrationFft;
        double carrier_power = 0.0;
        for (size_t k = 0; k < psd_sig.size(); ++k) {
            const double f = k * bin_hz;
            if (f >= kBandLowHz && f <= kBandHighHz)
                carrier_power = std::max(carrier_power, psd_sig[k]);
        }
        const auto psd_noise = welch_psd(nz, kCalibrationFft);
        const double noise_unit = band_noise_floor(psd_noise, bin_hz, -1);
        const double target = std::pow(10.0, params.snr_db / 10.0);
        const double sigma =
            carrier_power > 0.0 ? std::sqrt(carrier_power / (noise_unit * target)) : 0.0;

        for (size_t i = 0; i < n; ++i) {
            trace.samples[i].ax += sigma * nx[i];
            trace.samples[i].ay += sigma * ny[i];
            trace.samples[i].az += sigma * nz[i];
        }
    }

    if (params.quantization_step > 0.0) {
        const double q = params.quantization_step;
        for (auto& s : trace.samples) {
            s.ax = std::round(s.ax / q) * q;
            s.ay = std::round(s.ay / q) * q;
            s.az = std::round(s.az / q) * q;
        }
        trace.quantization_step = q;
    }
    return trace;
}

double measure_snr(const SampleTrace& trace, double carrier_hz, int fft_size) {
    if (fft_size <= 0) throw std::invalid_argument("measure_snr: fft_size must be > 0");
    // 50% overlap Welch needs N >= fft_size*(windows+1)/2 for 8 windows
    if (trace.samples.size() < static_cast<size_t>(fft_size) * 9 / 2)
        throw std::invalid_argument("measure_snr: trace too short for 8 FFT windows");

    const double bin_hz = static_cast<double>(trace.sample_rate_hz) / fft_size;
    const int carrier_bin = static_cast<int>(std::lround(carrier_hz / bin_hz));
    const double f = carrier_bin * bin_hz;
    if (f < kBandLowHz || f > kBandHighHz)
        throw std::invalid_argument("measure_snr: carrier outside the 10-60 Hz analysis band");

    const auto psd = welch_psd(magnitude_signal(trace), fft_size);
    const double noise = band_noise_floor(psd, bin_hz, carrier_bin);
    return 10.0 * std::log10(psd[static_cast<size_t>(carrier_bin)] / noise);
}

RpmSchedule apply_jammer(const RpmSchedule& schedule, const JammerParams& params) {
    params.validate();
    if (params.threshold == 0.0) return schedule;

    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> udelta(-params.threshold, params.threshold);

    const double period = params.duration + params.interval;
    RpmSchedule out;
    out.rpm_max = schedule.rpm_max;

    double t = 0.0;                  // absolute time at the cursor
    double jam_start = 0.0;          // start of the current jam period
    double delta = udelta(rng);      // perturbation of the current period
    const double eps = 1e-12;

    auto offset_at = [&](double time) {
        while (time >= jam_start + period - eps) {
            jam_start += period;
            delta = udelta(rng);
        }
        return (time < jam_start + params.duration - eps) ? delta : 0.0;
    };

    for (const auto& seg : schedule.segments) {
        double remaining = seg.duration_s;
        while (remaining > eps) {
            const double off = offset_at(t);
            // next boundary of the jam overlay within this segment
            const double in_period = t - jam_start;
            const double to_boundary =
                (in_period < params.duration - eps ? params.duration : period) - in_period;
            const double step = std::min(remaining, to_boundary);
            const double rpm = std::clamp(seg.rpm + off, 0.0, schedule.rpm_max);
            out.append(step, rpm);
            t += step;
            remaining -= step;
        }
    }
    return out;
}

std::vector<LocationProfile> default_location_profiles() {
    return {
        {"0", 45.02}, {"1", 21.68}, {"2", 29.12}, {"3", 16.81}, {"4", 22.1},
        {"5", 11.38}, {"6", 21.43}, {"7", 0.0},   {"8", 7.88},  {"cpu", 15.15},
    };
}

std::vector<LocationProfile> read_location_profiles(std::istream& in) {
    std::vector<LocationProfile> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("locations line " + std::to_string(lineno) +
                                     ": expected 'label,snr_db'");
        LocationProfile p;
        p.label = line.substr(0, comma);
        p.snr_db = std::stod(line.substr(comma + 1));
        for (const auto& q : out)
            if (q.label == p.label)
                throw std::runtime_error("locations line " + std::to_string(lineno) +
                                         ": duplicate label " + p.label);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace airviber
