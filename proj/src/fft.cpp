#include "airviber/fft.hpp"

#include <cmath>
#include <numbers>

namespace airviber {

namespace {

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<std::complex<double>>& a) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace

std::vector<std::complex<double>> fft(std::span<const double> input) {
    const size_t n = input.size();
    std::vector<std::complex<double>> out(n);
    if (n == 0) return out;
    if (is_pow2(n)) {
        for (size_t i = 0; i < n; ++i) out[i] = input[i];
        fft_radix2(out);
        return out;
    }
    // naive DFT fallback for non power-of-two sizes
    for (size_t k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        const double w = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        for (size_t t = 0; t < n; ++t)
            acc += input[t] * std::complex<double>(std::cos(w * t), std::sin(w * t));
        out[k] = acc;
    }
    return out;
}

}  // namespace airviber
