#pragma once

#include <complex>
#include <span>
#include <vector>

namespace airviber {

// DFT of a real input block. Radix-2 in-place for power-of-two sizes,
// direct evaluation otherwise (fine for the small sizes used here).
std::vector<std::complex<double>> fft(std::span<const double> input);

}  // namespace airviber
