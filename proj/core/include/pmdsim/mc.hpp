#pragma once

#include <cstdint>
#include <vector>

#include "pmdsim/analysis.hpp"
#include "pmdsim/modem.hpp"
#include "pmdsim/pmd_channel.hpp"

namespace pmdsim {

/// One Monte Carlo configuration: scheme, channel realization, stop rule.
struct Scenario {
    SchemeConfig scheme_config;
    double dgd_norm = 0.0;  // dgd / T_b
    double gamma = 0.5;
    Equalization equalization = Equalization::none;
    std::uint64_t seed = 1;
    long long min_errors = 100;
    long long max_bits = 20'000'000;
    int frame_slots = 16;  // QAM slots per frame (SC: n_subcarriers * frame_slots symbols)
};

struct BerPoint {
    double ebn0_db = 0.0;
    long long bits_simulated = 0;
    long long bit_errors = 0;
    double ber = 0.0;
    double ci95 = 0.0;      // binomial 95% confidence half-width
    bool censored = false;  // max_bits hit with zero errors; ber is an upper bound
};

struct BerCurve {
    std::vector<BerPoint> points;  // strictly increasing in ebn0_db
};

/// Counter-based seed split; used for per-point and per-frame substreams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

/// Runs modulate -> PMD -> coherent combining -> AWGN -> demodulate frames
/// until min_errors or max_bits. Deterministic given (seed, ebn0_db).
BerPoint simulate_ber(const Scenario& scenario, double ebn0_db);

BerCurve sweep_ebn0(const Scenario& scenario, const std::vector<double>& grid_db,
                    int workers = 1);

/// Linear interpolation of ebn0 against log10(BER) between bracketing points.
double required_ebn0(const BerCurve& curve, double target_ber);

/// Penalty per DGD value as the required-Eb/N0 difference against the
/// dgd = 0 baseline of the same scheme.
PenaltyCurve measure_penalty(const Scenario& base, const std::vector<double>& dgd_norm_list,
                             double target_ber, const std::vector<double>& grid_db,
                             int workers = 1);

}  // namespace pmdsim
