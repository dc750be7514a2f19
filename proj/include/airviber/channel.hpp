#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "airviber/physics.hpp"
#include "airviber/types.hpp"

namespace airviber {

// Surface/noise path settings. snr_db is the target in-band SNR at the
// receiver; +infinity means noiseless.
struct ChannelParams {
    double resonance_hz = 43.0;
    double resonance_gain = 0.0;
    double resonance_bandwidth = 5.0;
    double snr_db = std::numeric_limits<double>::infinity();
    uint64_t noise_seed = 1;
    uint64_t phase_seed = 1;
    double quantization_step = 0.0023956299;
    int sample_rate = 500;

    void validate() const;
};

struct LocationProfile {
    std::string label;
    double snr_db = 0.0;
};

// Fan-speed perturbation overlay: every duration+interval period the RPM is
// offset by a uniform delta in [-threshold, threshold] for duration seconds,
// then restored.
struct JammerParams {
    double threshold = 300.0;
    double duration = 1.0;
    double interval = 1.0;
    uint64_t seed = 1;

    void validate() const;
};

// Lorentzian resonance amplitude gain; identity when resonance_gain = 0.
double resonance_gain_at(double freq_hz, const ChannelParams& params);

// Full path: fan dynamics -> vibration synthesis -> resonance -> calibrated
// white Gaussian noise -> quantization. Deterministic for fixed seeds.
SampleTrace transmit(const RpmSchedule& schedule, const FanModel& fan, const ChannelParams& params);

// Welch PSD at the carrier bin over the median PSD across 10-60 Hz
// (carrier +/- 2 bins excluded), in dB.
double measure_snr(const SampleTrace& trace, double carrier_hz, int fft_size);

RpmSchedule apply_jammer(const RpmSchedule& schedule, const JammerParams& params);

// Per-location SNR profiles (labels "0".."8" plus "cpu").
std::vector<LocationProfile> default_location_profiles();
std::vector<LocationProfile> read_location_profiles(std::istream& in);

}  // namespace airviber
