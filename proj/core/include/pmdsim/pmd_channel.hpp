#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pmdsim/signal.hpp"

namespace pmdsim {

struct JonesMatrix {
    // row-major 2x2
    std::array<cplx, 4> m{};

    cplx& operator()(int r, int c) { return m[2 * r + c]; }
    const cplx& operator()(int r, int c) const { return m[2 * r + c]; }

    JonesMatrix operator*(const JonesMatrix& o) const;
    JonesMatrix adjoint() const;
    static JonesMatrix identity();
};

/// First-order PMD realization. gamma is the primary parameter
/// (gamma = cos^2 psi); the angle triple exists for Jones-level tests.
struct PmdState {
    double dgd = 0.0;             // seconds
    double gamma = 0.5;           // fast-PSP power splitting ratio
    double azimuth = 0.0;         // theta
    double ellipticity = 0.0;     // phi
    double stokes_half_angle = 0.0;  // psi, gamma = cos^2 psi

    static PmdState from_angles(double dgd, double azimuth, double ellipticity, double psi);
};

/// Field split over the two orthogonal PSP axes.
struct PolarizedSignal {
    SampledSignal fast;  // e1 axis
    SampledSignal slow;  // e2 axis
};

JonesMatrix jones_rotation(double azimuth, double ellipticity);
JonesMatrix pmd_delay_matrix(double omega, double dgd);
JonesMatrix fiber_jones(double omega, const PmdState& state);

/// Exact fractional delay via frequency-domain linear phase. The buffer is
/// zero-padded by ceil(|delay| * fs) samples at both ends before the
/// transform; epoch_offset tracks the padding so absolute time is kept.
SampledSignal fractional_delay(const SampledSignal& s, double delay_seconds);

/// Two-path field split: fast = sqrt(gamma) * advance(dgd/2),
/// slow = sqrt(1-gamma) * delay(dgd/2). Energy-preserving.
PolarizedSignal apply_pmd_field(const SampledSignal& signal, const PmdState& state);

/// Coherent receiver combining: projects the PSP pair onto the analyzer
/// aligned per gamma, r = sqrt(gamma) fast + sqrt(1-gamma) slow.
SampledSignal combine_psp(const PolarizedSignal& field, double gamma);

/// Effective scalar transfer of the combined path at baseband offset f:
/// H(f) = gamma e^{+j pi f dgd} + (1-gamma) e^{-j pi f dgd}.
cplx pmd_scalar_gain(double frequency, const PmdState& state);

/// Incoherent two-path sum of an intensity waveform. Returns the broadened
/// waveform; the output grows by the delay padding on both ends.
std::vector<double> apply_pmd_intensity(const std::vector<double>& intensity,
                                        double sample_rate, double dgd, double gamma);

/// Square-law photodetection: rho * (|fast|^2 + |slow|^2) per sample.
std::vector<double> direct_detect(const PolarizedSignal& field, double responsivity);

/// Circularly-symmetric complex Gaussian noise at per-sample variance
/// sigma^2 = P_ref * samples_per_symbol / (bits_per_symbol * 10^(ebn0/10)).
/// An infinite ebn0_db disables the noise. Deterministic given seed.
SampledSignal add_awgn_ref_power(const SampledSignal& signal, double ref_power, double ebn0_db,
                                 double bits_per_symbol, double samples_per_symbol,
                                 std::uint64_t seed);

/// Same, with P_ref measured as the mean power of `signal` itself.
SampledSignal add_awgn(const SampledSignal& signal, double ebn0_db, double bits_per_symbol,
                       double samples_per_symbol, std::uint64_t seed);

}  // namespace pmdsim
