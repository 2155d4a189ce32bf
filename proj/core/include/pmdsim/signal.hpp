#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace pmdsim {

using cplx = std::complex<double>;

/// Complex baseband waveform. samples[epoch_offset] is the sample at t = 0;
/// a signal that gained leading padding keeps its absolute time base by
/// increasing epoch_offset.
struct SampledSignal {
    std::vector<cplx> samples;
    double sample_rate = 1.0;  // Hz
    long epoch_offset = 0;
};

double signal_energy(const SampledSignal& s);
double mean_power(const SampledSignal& s);

/// Extracts `length` samples starting `start` samples after the epoch.
SampledSignal crop(const SampledSignal& s, long start, std::size_t length);

/// Matrix of modulation symbols a_{n,k}; n = subcarrier row, k = time slot
/// column. Staggered grids hold real half-symbols (imaginary parts zero).
struct SymbolGrid {
    std::vector<cplx> values;  // row-major: values[n * n_slots + k]
    int n_subcarriers = 0;
    int n_slots = 0;
    bool staggered = false;

    SymbolGrid() = default;
    SymbolGrid(int n, int k, bool stag = false)
        : values(static_cast<std::size_t>(n) * k), n_subcarriers(n), n_slots(k), staggered(stag) {}

    cplx& at(int n, int k) { return values[static_cast<std::size_t>(n) * n_slots + k]; }
    const cplx& at(int n, int k) const { return values[static_cast<std::size_t>(n) * n_slots + k]; }
};

double grid_energy(const SymbolGrid& g);

}  // namespace pmdsim
