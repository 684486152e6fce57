#pragma once

#include <complex>
#include <vector>

namespace sinr {

// In-place iterative radix-2 FFT; a.size() must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

// Coefficient convolution of two real sequences via complex FFT.
// Result length is a.size() + b.size() - 1 (empty if either is empty).
std::vector<double> fft_convolve(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace sinr
