#include "pmdsim/modem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pmdsim/errors.hpp"
#include "pmdsim/fft.hpp"

namespace pmdsim {

namespace {

const cplx kJ(0.0, 1.0);

cplx quarter_turn(int exponent) {
    switch (((exponent % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// Gray-coded PAM level for a bit pair / single bit, unnormalized.
double pam_level(unsigned bits, int bits_per_axis) {
    if (bits_per_axis == 1) return bits ? -1.0 : +1.0;
    switch (bits) {  // 00 01 11 10 -> -3 -1 +1 +3
        case 0b00: return -3.0;
        case 0b01: return -1.0;
        case 0b11: return +1.0;
        default: return +3.0;
    }
}

double qam_scale(int order) {
    // unit average energy: sqrt(2/3 (M-1)) per complex symbol
    return 1.0 / std::sqrt(2.0 / 3.0 * (order - 1));
}

cplx constellation_point(unsigned pattern, int order) {
    const int m = (order == 4) ? 2 : 4;
    const int half = m / 2;
    unsigned ibits = pattern >> half;
    unsigned qbits = pattern & ((1u << half) - 1);
    return qam_scale(order) * cplx(pam_level(ibits, half), pam_level(qbits, half));
}

void check_order(int order) {
    if (order != 4 && order != 16) throw std::invalid_argument("qam: order must be 4 or 16");
}

void check_multicarrier_cfg(const SchemeConfig& cfg) {
    const int L = cfg.n_subcarriers * cfg.oversampling;
    if (cfg.n_subcarriers < 1) throw std::invalid_argument("cfg: n_subcarriers must be >= 1");
    if (cfg.oversampling < 2)
        throw std::invalid_argument("cfg: oversampling must be >= 2 for multicarrier schemes");
    if (!is_pow2(static_cast<std::size_t>(L)))
        throw std::invalid_argument("cfg: n_subcarriers * oversampling must be a power of two");
}

std::size_t available_from_epoch(const SampledSignal& s) {
    if (s.epoch_offset < 0 || static_cast<std::size_t>(s.epoch_offset) > s.samples.size())
        throw framing_error("signal epoch outside sample buffer");
    return s.samples.size() - static_cast<std::size_t>(s.epoch_offset);
}

}  // namespace

int SchemeConfig::bits_per_symbol() const {
    return (qam_order == 4) ? 2 : 4;
}

double SchemeConfig::bit_rate() const {
    return n_subcarriers * subcarrier_spacing * bits_per_symbol();
}

double SchemeConfig::bit_interval() const { return 1.0 / bit_rate(); }

double SchemeConfig::sample_rate() const {
    return n_subcarriers * subcarrier_spacing * oversampling;
}

double SchemeConfig::subcarrier_frequency(int n) const { return n * subcarrier_spacing; }

std::vector<cplx> qam_map(const std::vector<std::uint8_t>& bits, int order) {
    check_order(order);
    const int m = (order == 4) ? 2 : 4;
    if (bits.size() % m != 0)
        throw std::invalid_argument("qam_map: bit count not divisible by log2(order)");
    std::vector<cplx> out;
    out.reserve(bits.size() / m);
    for (std::size_t i = 0; i < bits.size(); i += m) {
        unsigned pattern = 0;
        for (int b = 0; b < m; ++b) pattern = (pattern << 1) | (bits[i + b] & 1u);
        out.push_back(constellation_point(pattern, order));
    }
    return out;
}

std::vector<std::uint8_t> qam_demap(const std::vector<cplx>& symbols, int order) {
    check_order(order);
    const int m = (order == 4) ? 2 : 4;
    std::vector<cplx> points(order);
    for (int p = 0; p < order; ++p) points[p] = constellation_point(p, order);

    std::vector<std::uint8_t> bits;
    bits.reserve(symbols.size() * m);
    for (const cplx& s : symbols) {
        int best = 0;
        double best_d = std::norm(s - points[0]);
        for (int p = 1; p < order; ++p) {
            const double d = std::norm(s - points[p]);
            if (d < best_d) {  // strict: ties keep the smaller pattern
                best_d = d;
                best = p;
            }
        }
        for (int b = m - 1; b >= 0; --b) bits.push_back((best >> b) & 1u);
    }
    return bits;
}

SampledSignal ofdm_modulate(const SymbolGrid& grid, const SchemeConfig& cfg) {
    if (grid.staggered) throw std::invalid_argument("ofdm_modulate: staggered grid");
    if (grid.n_subcarriers != cfg.n_subcarriers)
        throw std::invalid_argument("ofdm_modulate: grid size mismatch");
    check_multicarrier_cfg(cfg);
    if (cfg.cp_samples < 0) throw std::invalid_argument("ofdm_modulate: negative cp_samples");

    const int N = cfg.n_subcarriers;
    const int L = N * cfg.oversampling;
    const double root_l = std::sqrt(static_cast<double>(L));
    const std::size_t slot_len = static_cast<std::size_t>(L) + cfg.cp_samples;

    SampledSignal out;
    out.sample_rate = cfg.sample_rate();
    out.samples.assign(slot_len * grid.n_slots, cplx(0.0, 0.0));

    std::vector<cplx> spec(L);
    for (int k = 0; k < grid.n_slots; ++k) {
        std::fill(spec.begin(), spec.end(), cplx(0.0, 0.0));
        for (int n0 = 0; n0 < N; ++n0) spec[n0 + 1] = grid.at(n0, k);  // subcarrier n at f = n*nu0
        ifft(spec);
        cplx* slot = out.samples.data() + static_cast<std::size_t>(k) * slot_len;
        for (int m = 0; m < L; ++m) slot[cfg.cp_samples + m] = spec[m] * root_l;
        for (int c = 0; c < cfg.cp_samples; ++c)
            slot[c] = slot[slot_len - cfg.cp_samples + c];  // cyclic prefix
    }
    return out;
}

SymbolGrid ofdm_demodulate(const SampledSignal& signal, const SchemeConfig& cfg,
                           const std::vector<cplx>* channel_gains, Equalization eq,
                           std::vector<int>* erased) {
    check_multicarrier_cfg(cfg);
    const int N = cfg.n_subcarriers;
    const int L = N * cfg.oversampling;
    const std::size_t slot_len = static_cast<std::size_t>(L) + cfg.cp_samples;
    const std::size_t avail = available_from_epoch(signal);
    if (avail < slot_len || avail % slot_len != 0)
        throw framing_error("ofdm_demodulate: length is not a whole number of slots");
    const int K = static_cast<int>(avail / slot_len);
    const double inv_root_l = 1.0 / std::sqrt(static_cast<double>(L));

    SymbolGrid grid(N, K, false);
    std::vector<cplx> spec(L);
    const cplx* base = signal.samples.data() + signal.epoch_offset;
    for (int k = 0; k < K; ++k) {
        const cplx* body = base + static_cast<std::size_t>(k) * slot_len + cfg.cp_samples;
        spec.assign(body, body + L);
        fft(spec);
        for (int n0 = 0; n0 < N; ++n0) {
            cplx y = spec[n0 + 1] * inv_root_l;
            if (eq == Equalization::zf && channel_gains) {
                const cplx h = (*channel_gains)[n0];
                if (std::norm(h) == 0.0) {
                    y = cplx(0.0, 0.0);
                    if (erased && k == 0) erased->push_back(n0);
                } else {
                    y /= h;
                }
            }
            grid.at(n0, k) = y;
        }
    }
    return grid;
}

SymbolGrid oqam_stagger(const SymbolGrid& qam_grid) {
    if (qam_grid.staggered) throw std::invalid_argument("oqam_stagger: grid already staggered");
    SymbolGrid out(qam_grid.n_subcarriers, 2 * qam_grid.n_slots, true);
    for (int n = 0; n < qam_grid.n_subcarriers; ++n) {
        for (int k = 0; k < qam_grid.n_slots; ++k) {
            out.at(n, 2 * k) = cplx(qam_grid.at(n, k).real(), 0.0);
            out.at(n, 2 * k + 1) = cplx(qam_grid.at(n, k).imag(), 0.0);
        }
    }
    return out;
}

SymbolGrid oqam_destagger(const SymbolGrid& staggered) {
    if (!staggered.staggered) throw std::invalid_argument("oqam_destagger: grid not staggered");
    if (staggered.n_slots % 2 != 0)
        throw std::invalid_argument("oqam_destagger: odd half-slot count");
    SymbolGrid out(staggered.n_subcarriers, staggered.n_slots / 2, false);
    for (int n = 0; n < staggered.n_subcarriers; ++n)
        for (int k = 0; k < out.n_slots; ++k)
            out.at(n, k) = cplx(staggered.at(n, 2 * k).real(), staggered.at(n, 2 * k + 1).real());
    return out;
}

SampledSignal fbmc_modulate(const SymbolGrid& grid, const SchemeConfig& cfg) {
    if (!grid.staggered) throw std::invalid_argument("fbmc_modulate: grid must be staggered");
    if (grid.n_subcarriers != cfg.n_subcarriers)
        throw std::invalid_argument("fbmc_modulate: grid size mismatch");
    check_multicarrier_cfg(cfg);
    const int N = cfg.n_subcarriers;
    const int sps = N * cfg.oversampling;  // samples per symbol duration T
    if (cfg.prototype.samples_per_symbol != sps)
        throw std::invalid_argument("fbmc_modulate: prototype sampled at wrong rate");
    const int q = sps / 2;  // half-period tau0 = T/2
    const std::vector<double> g = cfg.prototype.discrete_taps();
    const int Lp = static_cast<int>(g.size());
    const int K = grid.n_slots;

    SampledSignal out;
    out.sample_rate = cfg.sample_rate();
    out.samples.assign(static_cast<std::size_t>(K - 1) * q + Lp, cplx(0.0, 0.0));

    std::vector<cplx> w(sps);
    for (int k = 0; k < K; ++k) {
        std::fill(w.begin(), w.end(), cplx(0.0, 0.0));
        bool active = false;
        for (int n0 = 0; n0 < N; ++n0) {
            const cplx a = grid.at(n0, k);
            if (a == cplx(0.0, 0.0)) continue;
            w[n0 + 1] = a * quarter_turn(n0 + 1 + k);
            active = true;
        }
        if (!active) continue;
        ifft(w);
        const double scale = static_cast<double>(sps);  // undo ifft 1/sps
        const long base = static_cast<long>(k) * q;
        for (int j = 0; j < Lp; ++j)
            out.samples[base + j] += w[(base + j) % sps] * (scale * g[j]);
    }
    return out;
}

SymbolGrid fbmc_demodulate(const SampledSignal& signal, const SchemeConfig& cfg,
                           const std::vector<cplx>* channel_gains, Equalization eq,
                           std::vector<int>* erased) {
    check_multicarrier_cfg(cfg);
    const int N = cfg.n_subcarriers;
    const int sps = N * cfg.oversampling;
    if (cfg.prototype.samples_per_symbol != sps)
        throw std::invalid_argument("fbmc_demodulate: prototype sampled at wrong rate");
    const int q = sps / 2;
    const std::vector<double> g = cfg.prototype.discrete_taps();
    const int Lp = static_cast<int>(g.size());

    const std::size_t avail = available_from_epoch(signal);
    if (avail < static_cast<std::size_t>(Lp) || (avail - Lp) % q != 0)
        throw framing_error("fbmc_demodulate: length inconsistent with half-slot grid");
    const int K = static_cast<int>((avail - Lp) / q) + 1;

    SymbolGrid grid(N, K, true);
    const cplx* base = signal.samples.data() + signal.epoch_offset;
    std::vector<cplx> v(sps);
    for (int k = 0; k < K; ++k) {
        std::fill(v.begin(), v.end(), cplx(0.0, 0.0));
        const long s0 = static_cast<long>(k) * q;
        for (int j = 0; j < Lp; ++j) v[(s0 + j) % sps] += base[s0 + j] * g[j];
        fft(v);
        for (int n0 = 0; n0 < N; ++n0) {
            cplx y = v[n0 + 1] * std::conj(quarter_turn(n0 + 1 + k));
            if (eq == Equalization::zf && channel_gains) {
                const cplx h = (*channel_gains)[n0];
                if (std::norm(h) == 0.0) {
                    y = cplx(0.0, 0.0);
                    if (erased && k == 0) erased->push_back(n0);
                } else {
                    y /= h;
                }
            }
            grid.at(n0, k) = cplx(y.real(), 0.0);  // real-part projection
        }
    }
    return grid;
}

SampledSignal sc_modulate(const std::vector<std::uint8_t>& bits, const SchemeConfig& cfg) {
    if (cfg.scheme != Scheme::sc_qpsk) throw std::invalid_argument("sc_modulate: scheme mismatch");
    if (bits.size() % 2 != 0) throw std::invalid_argument("sc_modulate: odd bit count");
    const int os = cfg.oversampling;
    if (cfg.prototype.samples_per_symbol != os)
        throw std::invalid_argument("sc_modulate: prototype sampled at wrong rate");
    const std::vector<double> g = cfg.prototype.discrete_taps();
    const int Lp = static_cast<int>(g.size());
    const std::vector<cplx> symbols = qam_map(bits, 4);
    const std::size_t ns = symbols.size();

    SampledSignal out;
    // SC symbol rate equals the aggregate multicarrier rate N * nu0
    out.sample_rate = cfg.n_subcarriers * cfg.subcarrier_spacing * os;
    out.samples.assign((ns - 1) * os + Lp, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < ns; ++i) {
        const cplx a = symbols[i];
        cplx* dst = out.samples.data() + i * os;
        for (int j = 0; j < Lp; ++j) dst[j] += a * g[j];
    }
    return out;
}

std::vector<std::uint8_t> sc_demodulate(const SampledSignal& signal, const SchemeConfig& cfg) {
    const int os = cfg.oversampling;
    if (cfg.prototype.samples_per_symbol != os)
        throw std::invalid_argument("sc_demodulate: prototype sampled at wrong rate");
    const std::vector<double> g = cfg.prototype.discrete_taps();
    const int Lp = static_cast<int>(g.size());
    const std::size_t avail = available_from_epoch(signal);
    if (avail < static_cast<std::size_t>(Lp))
        throw framing_error("sc_demodulate: signal shorter than one pulse span");
    const std::size_t ns = (avail - Lp) / os + 1;

    const cplx* base = signal.samples.data() + signal.epoch_offset;
    std::vector<cplx> decisions(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        cplx acc(0.0, 0.0);
        const cplx* src = base + i * os;
        for (int j = 0; j < Lp; ++j) acc += src[j] * g[j];
        decisions[i] = acc;
    }
    return qam_demap(decisions, 4);
}

}  // namespace pmdsim
