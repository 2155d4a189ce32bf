#include "pmdsim/pmd_channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "pmdsim/fft.hpp"

namespace pmdsim {

JonesMatrix JonesMatrix::operator*(const JonesMatrix& o) const {
    JonesMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j);
    return r;
}

JonesMatrix JonesMatrix::adjoint() const {
    JonesMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

JonesMatrix JonesMatrix::identity() {
    JonesMatrix r;
    r(0, 0) = r(1, 1) = cplx(1.0, 0.0);
    return r;
}

PmdState PmdState::from_angles(double dgd, double azimuth, double ellipticity, double psi) {
    PmdState s;
    s.dgd = dgd;
    s.azimuth = azimuth;
    s.ellipticity = ellipticity;
    s.stokes_half_angle = psi;
    const double c = std::cos(psi);
    s.gamma = c * c;
    return s;
}

JonesMatrix jones_rotation(double azimuth, double ellipticity) {
    const double ct = std::cos(azimuth), st = std::sin(azimuth);
    const double cp = std::cos(ellipticity), sp = std::sin(ellipticity);
    const cplx r1(ct * cp, -st * sp);
    const cplx r2(st * cp, ct * sp);
    JonesMatrix r;
    r(0, 0) = r1;
    r(0, 1) = -std::conj(r2);
    r(1, 0) = r2;
    r(1, 1) = std::conj(r1);
    return r;
}

JonesMatrix pmd_delay_matrix(double omega, double dgd) {
    if (dgd < 0.0) throw std::invalid_argument("pmd_delay_matrix: negative dgd");
    JonesMatrix u;
    const double half = omega * dgd / 2.0;
    u(0, 0) = cplx(std::cos(half), std::sin(half));
    u(1, 1) = cplx(std::cos(half), -std::sin(half));
    return u;
}

JonesMatrix fiber_jones(double omega, const PmdState& state) {
    const JonesMatrix r = jones_rotation(state.azimuth, state.ellipticity);
    return r * pmd_delay_matrix(omega, state.dgd) * r.adjoint();
}

SampledSignal fractional_delay(const SampledSignal& s, double delay_seconds) {
    if (delay_seconds == 0.0) return s;
    const double fs = s.sample_rate;
    const std::size_t pad = static_cast<std::size_t>(std::ceil(std::abs(delay_seconds) * fs));
    const std::size_t m = next_pow2(s.samples.size() + 2 * pad);

    std::vector<cplx> buf(m, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < s.samples.size(); ++i) buf[pad + i] = s.samples[i];
    fft(buf);
    for (std::size_t k = 0; k < m; ++k) {
        const double fk = (k < m / 2 ? static_cast<double>(k)
                                     : static_cast<double>(k) - static_cast<double>(m)) *
                          fs / static_cast<double>(m);
        const double ang = -2.0 * std::numbers::pi * fk * delay_seconds;
        buf[k] *= cplx(std::cos(ang), std::sin(ang));
    }
    ifft(buf);

    SampledSignal out;
    out.sample_rate = fs;
    out.epoch_offset = s.epoch_offset + static_cast<long>(pad);
    out.samples = std::move(buf);
    return out;
}

PolarizedSignal apply_pmd_field(const SampledSignal& signal, const PmdState& state) {
    if (!(state.gamma >= 0.0 && state.gamma <= 1.0))
        throw std::invalid_argument("apply_pmd_field: gamma outside [0, 1]");
    const double c1 = std::sqrt(state.gamma);
    const double c2 = std::sqrt(1.0 - state.gamma);
    PolarizedSignal out;
    out.fast = fractional_delay(signal, -state.dgd / 2.0);  // fast path arrives early
    out.slow = fractional_delay(signal, +state.dgd / 2.0);
    for (cplx& x : out.fast.samples) x *= c1;
    for (cplx& x : out.slow.samples) x *= c2;
    return out;
}

SampledSignal combine_psp(const PolarizedSignal& field, double gamma) {
    if (field.fast.samples.size() != field.slow.samples.size() ||
        field.fast.epoch_offset != field.slow.epoch_offset)
        throw std::invalid_argument("combine_psp: misaligned components");
    const double w1 = std::sqrt(gamma);
    const double w2 = std::sqrt(1.0 - gamma);
    SampledSignal out = field.fast;
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] = w1 * field.fast.samples[i] + w2 * field.slow.samples[i];
    return out;
}

cplx pmd_scalar_gain(double frequency, const PmdState& state) {
    const double ang = std::numbers::pi * frequency * state.dgd;
    return state.gamma * cplx(std::cos(ang), std::sin(ang)) +
           (1.0 - state.gamma) * cplx(std::cos(ang), -std::sin(ang));
}

std::vector<double> apply_pmd_intensity(const std::vector<double>& intensity,
                                        double sample_rate, double dgd, double gamma) {
    for (double v : intensity)
        if (v < 0.0) throw std::invalid_argument("apply_pmd_intensity: negative sample");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::invalid_argument("apply_pmd_intensity: gamma outside [0, 1]");
    if (dgd == 0.0) return intensity;

    SampledSignal s;
    s.sample_rate = sample_rate;
    s.samples.reserve(intensity.size());
    for (double v : intensity) s.samples.emplace_back(v, 0.0);

    const SampledSignal early = fractional_delay(s, -dgd / 2.0);
    const SampledSignal late = fractional_delay(s, +dgd / 2.0);
    std::vector<double> out(early.samples.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double v =
            gamma * early.samples[i].real() + (1.0 - gamma) * late.samples[i].real();
        // band-limited interpolation leaves FFT-roundoff-scale negative ripple
        out[i] = std::max(v, 0.0);
    }
    return out;
}

std::vector<double> direct_detect(const PolarizedSignal& field, double responsivity) {
    if (responsivity <= 0.0) throw std::invalid_argument("direct_detect: responsivity must be > 0");
    if (field.fast.samples.size() != field.slow.samples.size())
        throw std::invalid_argument("direct_detect: misaligned components");
    std::vector<double> out(field.fast.samples.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = responsivity * (std::norm(field.fast.samples[i]) + std::norm(field.slow.samples[i]));
    return out;
}

SampledSignal add_awgn_ref_power(const SampledSignal& signal, double ref_power, double ebn0_db,
                                 double bits_per_symbol, double samples_per_symbol,
                                 std::uint64_t seed) {
    if (std::isinf(ebn0_db) && ebn0_db > 0.0) return signal;
    if (!(ref_power > 0.0)) throw std::invalid_argument("add_awgn: zero-power signal");
    const double snr = std::pow(10.0, ebn0_db / 10.0);
    const double sigma2 = ref_power * samples_per_symbol / (bits_per_symbol * snr);
    const double sigma_dim = std::sqrt(sigma2 / 2.0);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SampledSignal out = signal;
    for (cplx& x : out.samples) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        x += cplx(sigma_dim * re, sigma_dim * im);
    }
    return out;
}

SampledSignal add_awgn(const SampledSignal& signal, double ebn0_db, double bits_per_symbol,
                       double samples_per_symbol, std::uint64_t seed) {
    if (std::isinf(ebn0_db) && ebn0_db > 0.0) return signal;
    return add_awgn_ref_power(signal, mean_power(signal), ebn0_db, bits_per_symbol,
                              samples_per_symbol, seed);
}

}  // namespace pmdsim
