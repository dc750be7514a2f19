#include "airviber/physics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace airviber {

double rpm_to_hz(double rpm) {
    if (rpm < 0.0) throw std::invalid_argument("rpm_to_hz: rpm must be >= 0");
    return rpm / 60.0;
}

double centrifugal_force(double mass_kg, double radius_m, double rpm) {
    if (mass_kg < 0.0) throw std::invalid_argument("centrifugal_force: mass must be >= 0");
    if (radius_m <= 0.0) throw std::invalid_argument("centrifugal_force: radius must be > 0");
    if (rpm <= 0.0) throw std::invalid_argument("centrifugal_force: rpm must be > 0");
    const double omega = 2.0 * std::numbers::pi * rpm / 60.0;
    return mass_kg * omega * omega * radius_m;
}

std::vector<double> rpm_response(const RpmSchedule& schedule, const FanModel& model,
                                 int sample_rate_hz) {
    if (sample_rate_hz <= 0) throw std::invalid_argument("rpm_response: sample_rate must be > 0");
    if (schedule.segments.empty()) throw std::invalid_argument("rpm_response: empty schedule");

    const double dt = 1.0 / sample_rate_hz;
    const size_t n = static_cast<size_t>(std::llround(schedule.total_duration() * sample_rate_hz));
    std::vector<double> out;
    out.reserve(n);

    // per-step tracking factor; tau = 0 snaps to the command immediately
    const double k = model.spinup_tau > 0.0 ? 1.0 - std::exp(-dt / model.spinup_tau) : 1.0;

    size_t seg = 0;
    double seg_end = schedule.segments[0].duration_s;
    double rpm = schedule.segments[0].rpm;
    for (size_t i = 0; i < n; ++i) {
        const double t = i * dt;
        while (seg + 1 < schedule.segments.size() && t >= seg_end)
            seg_end += schedule.segments[++seg].duration_s;
        const double cmd = schedule.segments[seg].rpm;
        rpm += (cmd - rpm) * k;
        out.push_back(rpm);
    }
    return out;
}

SampleTrace synthesize_vibration(const std::vector<double>& rpm_samples, const FanModel& model,
                                 int sample_rate_hz, uint64_t phase_seed) {
    if (rpm_samples.empty()) throw std::invalid_argument("synthesize_vibration: no rpm samples");
    if (sample_rate_hz <= 0) throw std::invalid_argument("synthesize_vibration: bad sample rate");

    std::mt19937_64 rng(phase_seed);
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * std::numbers::pi);
    double phase = uphase(rng);
    std::vector<double> hphase(model.harmonics.size());
    for (auto& p : hphase) p = uphase(rng);

    const double dt = 1.0 / sample_rate_hz;
    SampleTrace trace;
    trace.sample_rate_hz = sample_rate_hz;
    trace.samples.reserve(rpm_samples.size());
    for (double rpm : rpm_samples) {
        const double f = rpm / 60.0;
        phase += 2.0 * std::numbers::pi * f * dt;
        const double amp = model.amplitude_gain * f * f;
        double z = amp * std::sin(phase);
        for (size_t h = 0; h < model.harmonics.size(); ++h) {
            // harmonics share the fundamental's phase trajectory scaled by order
            z += amp * model.harmonics[h].relative_amplitude *
                 std::sin(model.harmonics[h].order * phase + hphase[h]);
        }
        trace.samples.push_back({0.0, 0.0, 9.81 + z});
    }
    return trace;
}

}  // namespace airviber
