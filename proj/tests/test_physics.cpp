#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "airviber/dsp.hpp"
#include "airviber/physics.hpp"

using namespace airviber;

namespace {

// independent route for F: the t -> V -> F chain with t = 60/rpm seconds
double force_oracle(double mass, double radius, double rpm) {
    const double t = 60.0 / rpm;
    const double v = 2.0 * std::numbers::pi * radius / t;
    return mass * v * v / radius;
}

int peak_bin(const std::vector<double>& psd, double bin_hz, double lo_hz, double hi_hz) {
    int best = -1;
    double best_v = -1.0;
    for (size_t k = 0; k < psd.size(); ++k) {
        const double f = k * bin_hz;
        if (f < lo_hz || f > hi_hz) continue;
        if (psd[k] > best_v) {
            best_v = psd[k];
            best = static_cast<int>(k);
        }
    }
    return best;
}

}  // namespace

TEST_CASE("rpm_to_hz") {
    CHECK(rpm_to_hz(3000.0) == 50.0);
    CHECK(rpm_to_hz(0.0) == 0.0);
    CHECK(rpm_to_hz(2580.0) == 43.0);
    CHECK_THROWS_AS(rpm_to_hz(-1.0), std::invalid_argument);
}

TEST_CASE("rpm_to_hz linearity") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 3000.0);
    for (int i = 0; i < 100; ++i) {
        const double a = u(rng), b = u(rng);
        CHECK(rpm_to_hz(a + b) == doctest::Approx(rpm_to_hz(a) + rpm_to_hz(b)).epsilon(1e-14));
    }
}

TEST_CASE("centrifugal force matches the independent oracle") {
    // 0.1 oz at 3 in, 2600 RPM, in SI units
    const double m = 0.002835, r = 0.0762, rpm = 2600.0;
    CHECK(centrifugal_force(m, r, rpm) == doctest::Approx(force_oracle(m, r, rpm)).epsilon(1e-12));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> um(1e-4, 0.05), ur(0.005, 0.3), urpm(10.0, 4000.0);
    for (int i = 0; i < 1000; ++i) {
        const double mm = um(rng), rr = ur(rng), rp = urpm(rng);
        CHECK(centrifugal_force(mm, rr, rp) ==
              doctest::Approx(force_oracle(mm, rr, rp)).epsilon(1e-9));
    }
}

TEST_CASE("centrifugal force edge cases") {
    CHECK(centrifugal_force(0.0, 0.1, 2600.0) == 0.0);
    CHECK_THROWS_AS(centrifugal_force(0.1, 0.0, 2600.0), std::invalid_argument);
    CHECK_THROWS_AS(centrifugal_force(0.1, 0.1, 0.0), std::invalid_argument);
    // F scales with the square of the speed
    const double f1 = centrifugal_force(0.01, 0.05, 1200.0);
    const double f2 = centrifugal_force(0.01, 0.05, 2400.0);
    CHECK(f2 / f1 == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("rpm_response with tau 0 reproduces the command") {
    RpmSchedule s;
    s.append(1.0, 2600.0);
    FanModel fan;
    fan.spinup_tau = 0.0;
    auto rpm = rpm_response(s, fan, 500);
    REQUIRE(rpm.size() == 500);
    for (double v : rpm) CHECK(v == 2600.0);
}

TEST_CASE("rpm_response step settles like a first-order system") {
    RpmSchedule s;
    s.append(2.0, 2000.0);
    s.append(3.0, 2600.0);
    FanModel fan;
    fan.spinup_tau = 0.25;
    auto rpm = rpm_response(s, fan, 500);

    // 5 tau after the step the response is within 1% of the target
    const size_t idx = static_cast<size_t>((2.0 + 5.0 * 0.25) * 500);
    CHECK(std::abs(rpm[idx] - 2600.0) / 600.0 < 0.01);
    // closed form at 2 tau into the step: 1 - e^-2 of the way there
    const size_t at2tau = static_cast<size_t>((2.0 + 2.0 * 0.25) * 500);
    const double expected = 2000.0 + 600.0 * (1.0 - std::exp(-2.0));
    CHECK(rpm[at2tau] == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("evaluation-parameter schedule reaches its plateau frequencies") {
    RpmSchedule s;
    s.append(5.0, 3030.0);
    s.append(5.0, 3260.0);
    s.append(5.0, 2600.0);
    FanModel fan;
    auto rpm = rpm_response(s, fan, 500);
    CHECK(rpm[5 * 500 - 1] / 60.0 == doctest::Approx(50.5).epsilon(1e-3));
    CHECK(rpm[10 * 500 - 1] / 60.0 == doctest::Approx(3260.0 / 60.0).epsilon(1e-3));
    CHECK(rpm[15 * 500 - 1] / 60.0 == doctest::Approx(2600.0 / 60.0).epsilon(1e-3));
}

TEST_CASE("constant 3000 RPM puts the spectral peak at 50 Hz") {
    FanModel fan;
    std::vector<double> rpm(5000, 3000.0);
    auto trace = synthesize_vibration(rpm, fan, 500, 1);
    auto psd = welch_psd(magnitude_signal(trace), 250);  // 2 Hz bins, 50 Hz on-bin
    const double bin_hz = 500.0 / 250.0;
    const int peak = peak_bin(psd, bin_hz, 4.0, 240.0);
    CHECK(std::abs(peak * bin_hz - 50.0) <= bin_hz);
}

TEST_CASE("zero amplitude gain leaves pure gravity DC") {
    FanModel fan;
    fan.amplitude_gain = 0.0;
    std::vector<double> rpm(1000, 3000.0);
    auto trace = synthesize_vibration(rpm, fan, 500, 1);
    for (const auto& s : trace.samples) {
        CHECK(s.ax == 0.0);
        CHECK(s.ay == 0.0);
        CHECK(s.az == 9.81);
    }
}

TEST_CASE("plateau amplitude follows the f^2 law") {
    FanModel fan;
    fan.spinup_tau = 0.0;
    auto amp_at = [&](double rpm_value) {
        std::vector<double> rpm(5000, rpm_value);
        auto trace = synthesize_vibration(rpm, fan, 500, 1);
        double peak = 0.0;
        for (const auto& s : trace.samples) peak = std::max(peak, std::abs(s.az - 9.81));
        return peak;
    };
    const double ratio = amp_at(3260.0) / amp_at(2600.0);
    const double expected = (3260.0 / 2600.0) * (3260.0 / 2600.0);
    CHECK(std::abs(ratio - expected) / expected < 0.01);
}

TEST_CASE("constant-RPM synthesis is spectrally clean away from the carrier") {
    FanModel fan;
    std::vector<double> rpm(15000, 3000.0);
    auto trace = synthesize_vibration(rpm, fan, 500, 5);
    auto psd = welch_psd(magnitude_signal(trace), 250);
    const double bin_hz = 2.0;
    const int carrier = 25;  // 50 Hz
    const double peak = psd[carrier];
    for (size_t k = 3; k < psd.size(); ++k) {
        if (std::abs(static_cast<int>(k) - carrier) <= 2) continue;
        CHECK(10.0 * std::log10(psd[k] / peak) < -40.0);
    }
}

TEST_CASE("harmonics appear at their configured orders") {
    FanModel fan;
    fan.harmonics = {{2, 0.5}};
    std::vector<double> rpm(10000, 3000.0);
    auto trace = synthesize_vibration(rpm, fan, 500, 2);
    auto psd = welch_psd(magnitude_signal(trace), 250);
    CHECK(psd[50] > psd[47] * 100.0);  // 100 Hz line present
    CHECK(psd[50] < psd[25]);          // weaker than the fundamental
}
