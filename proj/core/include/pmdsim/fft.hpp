#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace pmdsim {

// Radix-2 in-place transforms. Sizes must be powers of two.
// fft: X[k] = sum_m x[m] e^{-j 2 pi k m / N}   (no scaling)
// ifft: x[m] = (1/N) sum_k X[k] e^{+j 2 pi k m / N}
void fft(std::vector<std::complex<double>>& data);
void ifft(std::vector<std::complex<double>>& data);

bool is_pow2(std::size_t n);
std::size_t next_pow2(std::size_t n);

}  // namespace pmdsim
