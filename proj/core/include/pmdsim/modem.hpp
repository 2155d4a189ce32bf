#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pmdsim/prototype.hpp"
#include "pmdsim/signal.hpp"

namespace pmdsim {

enum class Scheme { sc_qpsk, ofdm_qam, fbmc_oqam };
enum class Equalization { none, zf };

/// Transceiver parameters shared by all three schemes. Bit rate follows as
/// R_b = N * nu0 * log2(M); SC-QPSK runs at symbol rate N * nu0 so the rates
/// match across schemes for fixed N, nu0, M.
struct SchemeConfig {
    Scheme scheme = Scheme::ofdm_qam;
    int n_subcarriers = 128;        // N (1 for SC-QPSK framing purposes)
    double subcarrier_spacing = 1e8;  // nu0, Hz
    int qam_order = 4;              // M in {4, 16}
    int cp_samples = 0;             // OFDM only
    Prototype prototype;            // FBMC prototype / SC pulse shaping
    int oversampling = 2;           // samples per subcarrier interval

    int bits_per_symbol() const;
    double bit_rate() const;        // R_b = N * nu0 * log2(M)
    double bit_interval() const;    // T_b = 1 / R_b
    double sample_rate() const;
    /// Physical center frequency of subcarrier n (1-based): f_n = n * nu0.
    double subcarrier_frequency(int n) const;
};

// --- bit/symbol mapping ---------------------------------------------------

/// Gray-mapped unit-average-energy M-QAM. Per axis, bit pairs map
/// 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3 (QPSK: 0 -> +1, 1 -> -1); the
/// first half of each symbol's bits drives I, the second half Q.
std::vector<cplx> qam_map(const std::vector<std::uint8_t>& bits, int order);

/// Minimum-distance hard decision, Gray inverse of qam_map. Distance ties
/// break toward the lexicographically smallest bit pattern.
std::vector<std::uint8_t> qam_demap(const std::vector<cplx>& symbols, int order);

// --- OFDM/QAM -------------------------------------------------------------

SampledSignal ofdm_modulate(const SymbolGrid& grid, const SchemeConfig& cfg);

/// Per-slot forward DFT projections after CP removal. With channel_gains and
/// zf mode each subcarrier is divided by its gain; zero gains are erased (set
/// to 0 and reported through `erased` as subcarrier indices) instead of
/// dividing.
SymbolGrid ofdm_demodulate(const SampledSignal& signal, const SchemeConfig& cfg,
                           const std::vector<cplx>* channel_gains = nullptr,
                           Equalization eq = Equalization::none,
                           std::vector<int>* erased = nullptr);

// --- FBMC/OQAM ------------------------------------------------------------

/// Real/imaginary halves of each QAM symbol on successive half-period slots;
/// N x K complex -> N x 2K real. The j^(n+k) rotation happens at synthesis.
SymbolGrid oqam_stagger(const SymbolGrid& qam_grid);
SymbolGrid oqam_destagger(const SymbolGrid& staggered);

SampledSignal fbmc_modulate(const SymbolGrid& staggered_grid, const SchemeConfig& cfg);

SymbolGrid fbmc_demodulate(const SampledSignal& signal, const SchemeConfig& cfg,
                           const std::vector<cplx>* channel_gains = nullptr,
                           Equalization eq = Equalization::none,
                           std::vector<int>* erased = nullptr);

// --- SC-QPSK --------------------------------------------------------------

SampledSignal sc_modulate(const std::vector<std::uint8_t>& bits, const SchemeConfig& cfg);

/// Matched filter, symbol-rate sampling at the combined filter group delay,
/// hard QPSK decisions. No equalizer.
std::vector<std::uint8_t> sc_demodulate(const SampledSignal& signal, const SchemeConfig& cfg);

}  // namespace pmdsim
