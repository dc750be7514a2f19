#pragma once

#include <cstdint>
#include <vector>

#include "airviber/types.hpp"

namespace airviber {

struct Harmonic {
    int order = 2;                 // integer multiple of the fundamental
    double relative_amplitude = 0; // [0, 1] of the fundamental amplitude
};

// The fan as a vibration source: its speed limits, spin dynamics and the
// rotating-unbalance amplitude law A(f) = amplitude_gain * f^2.
struct FanModel {
    double rpm_max = 3260.0;
    double spinup_tau = 0.25;          // first-order time constant, seconds
    double unbalance_mass = 0.002835;  // kg (0.1 oz)
    double unbalance_radius = 0.0508;  // m (2 in)
    double amplitude_gain = 4e-5;      // (m/s^2) per Hz^2
    std::vector<Harmonic> harmonics;
};

// rpm / 60, the carrier frequency of a fan spinning at rpm.
double rpm_to_hz(double rpm);

// m * omega^2 * r with omega = 2*pi*rpm/60, in newtons.
double centrifugal_force(double mass_kg, double radius_m, double rpm);

// First-order exponential tracking of the commanded schedule sampled at
// sample_rate. tau = 0 reproduces the piecewise-constant command exactly.
std::vector<double> rpm_response(const RpmSchedule& schedule, const FanModel& model,
                                 int sample_rate_hz);

// Phase-continuous oscillator over the sampled RPM timeline. Energy on the
// z axis with the 9.81 m/s^2 gravity offset; harmonics per the model.
SampleTrace synthesize_vibration(const std::vector<double>& rpm_samples, const FanModel& model,
                                 int sample_rate_hz, uint64_t phase_seed);

}  // namespace airviber
