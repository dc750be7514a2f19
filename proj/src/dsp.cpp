#include "airviber/dsp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "airviber/fft.hpp"

namespace airviber {

std::vector<double> magnitude_signal(const SampleTrace& trace) {
    std::vector<double> m;
    m.reserve(trace.samples.size());
    for (const auto& s : trace.samples)
        m.push_back(std::sqrt(s.ax * s.ax + s.ay * s.ay + s.az * s.az));
    return m;
}

std::vector<double> highpass(std::span<const double> x, double cutoff_hz, double sample_rate_hz) {
    if (cutoff_hz <= 0.0) return {x.begin(), x.end()};
    const double dt = 1.0 / sample_rate_hz;
    const double rc = 1.0 / (2.0 * std::numbers::pi * cutoff_hz);
    const double alpha = rc / (rc + dt);
    std::vector<double> y(x.size());
    if (x.empty()) return y;
    y[0] = 0.0;
    for (size_t i = 1; i < x.size(); ++i)
        y[i] = alpha * (y[i - 1] + x[i] - x[i - 1]);
    return y;
}

std::vector<double> welch_psd(std::span<const double> x, int fft_size) {
    if (fft_size <= 0) throw std::invalid_argument("welch_psd: fft_size must be positive");
    const size_t n = static_cast<size_t>(fft_size);
    if (x.size() < n) throw std::invalid_argument("welch_psd: input shorter than fft_size");

    std::vector<double> window(n);
    double win_pow = 0.0;
    for (size_t i = 0; i < n; ++i) {
        window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (n - 1));
        win_pow += window[i] * window[i];
    }

    const size_t hop = n / 2;
    std::vector<double> psd(n / 2 + 1, 0.0);
    std::vector<double> seg(n);
    size_t count = 0;
    for (size_t start = 0; start + n <= x.size(); start += hop) {
        double mean = 0.0;
        for (size_t i = 0; i < n; ++i) mean += x[start + i];
        mean /= static_cast<double>(n);
        for (size_t i = 0; i < n; ++i) seg[i] = (x[start + i] - mean) * window[i];
        auto spec = fft(seg);
        for (size_t k = 0; k < psd.size(); ++k) psd[k] += std::norm(spec[k]) / win_pow;
        ++count;
    }
    for (auto& v : psd) v /= static_cast<double>(count);
    return psd;
}

}  // namespace airviber
