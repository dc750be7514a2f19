#pragma once

#include <span>
#include <vector>

#include "airviber/types.hpp"

namespace airviber {

// Per-sample vector magnitude sqrt(ax^2 + ay^2 + az^2).
std::vector<double> magnitude_signal(const SampleTrace& trace);

// First-order RC high-pass; removes the gravity DC component and slow drift.
std::vector<double> highpass(std::span<const double> x, double cutoff_hz, double sample_rate_hz);

// Welch-averaged power spectral density: Hann window, 50% overlap, mean
// removed per segment. Returns fft_size/2 + 1 one-sided power values.
std::vector<double> welch_psd(std::span<const double> x, int fft_size);

}  // namespace airviber
