#include "pmdsim/mc.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "pmdsim/analysis.hpp"
#include "pmdsim/errors.hpp"

namespace pmdsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<std::uint8_t> random_bits(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> bits(count);
    std::uint64_t word = 0;
    int left = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (left == 0) {
            word = rng();
            left = 64;
        }
        bits[i] = word & 1u;
        word >>= 1;
        --left;
    }
    return bits;
}

struct FrameResult {
    long long bits = 0;
    long long errors = 0;
};

/// Pulse-shape constants behind the per-carrier broadening loss. Fitted
/// receiver/pulse-shape coefficients; each scheme has its own value.
constexpr double kShapeCoeffScQpsk = 68.0;
constexpr double kShapeCoeffOfdm = 64.0;
constexpr double kShapeCoeffFbmc = 60.0;

PenaltyModel broadening_model(const Scenario& sc) {
    const auto& cfg = sc.scheme_config;
    PenaltyModel model;
    switch (cfg.scheme) {
        case Scheme::sc_qpsk: model.coefficient_a = kShapeCoeffScQpsk; break;
        case Scheme::ofdm_qam: model.coefficient_a = kShapeCoeffOfdm; break;
        case Scheme::fbmc_oqam: model.coefficient_a = kShapeCoeffFbmc; break;
    }
    model.bit_interval = cfg.bit_interval();
    model.symbol_duration = 1.0 / cfg.subcarrier_spacing;
    model.n_subcarriers = cfg.n_subcarriers;
    model.gamma = sc.gamma;
    model.time_normalization = TimeNormalization::symbol_duration;
    return model;
}

/// Amplitude transmission of the fiber seen by the single-carrier stream:
/// the RMS broadening of its bit-interval pulse converts to an equivalent
/// SNR loss, applied here as a flat amplitude scale.
double sc_channel_amplitude(const Scenario& sc) {
    const double dgd = sc.dgd_norm * sc.scheme_config.bit_interval();
    return std::pow(10.0, -penalty_sc(broadening_model(sc), dgd) / 20.0);
}

/// Amplitude transmission per multicarrier subcarrier: carrier n rides a
/// period T/n, so its broadening loss grows as n^2. Returned 0-based.
std::vector<cplx> channel_gains(const Scenario& sc) {
    const PenaltyModel model = broadening_model(sc);
    const double dgd = sc.dgd_norm * sc.scheme_config.bit_interval();
    std::vector<cplx> gains(sc.scheme_config.n_subcarriers);
    for (int n0 = 0; n0 < sc.scheme_config.n_subcarriers; ++n0)
        gains[n0] = std::pow(10.0, -penalty_subcarrier(model, n0 + 1, dgd) / 20.0);
    return gains;
}

/// Receiver-noise front end shared by all schemes. Symbols are unit energy
/// by construction in every modulator, so the noise variance is referenced
/// to Es = 1 rather than to the (PMD-attenuated) received power.
SampledSignal through_channel(const SampledSignal& tx, const Scenario& sc, double ebn0_db,
                              std::uint64_t noise_seed) {
    return add_awgn_ref_power(tx, 1.0, ebn0_db, sc.scheme_config.bits_per_symbol(), 1.0,
                              noise_seed);
}

SymbolGrid bits_to_grid(const std::vector<std::uint8_t>& bits, const SchemeConfig& cfg,
                        int n_slots) {
    const std::vector<cplx> symbols = qam_map(bits, cfg.qam_order);
    SymbolGrid grid(cfg.n_subcarriers, n_slots, false);
    std::size_t i = 0;
    for (int k = 0; k < n_slots; ++k)
        for (int n = 0; n < cfg.n_subcarriers; ++n) grid.at(n, k) = symbols[i++];
    return grid;
}

std::vector<std::uint8_t> grid_to_bits(const SymbolGrid& grid, int order, int k_first,
                                       int k_last) {
    std::vector<cplx> symbols;
    symbols.reserve(static_cast<std::size_t>(grid.n_subcarriers) * (k_last - k_first));
    for (int k = k_first; k < k_last; ++k)
        for (int n = 0; n < grid.n_subcarriers; ++n) symbols.push_back(grid.at(n, k));
    return qam_demap(symbols, order);
}

FrameResult run_frame(const Scenario& sc, double ebn0_db, std::uint64_t frame_seed) {
    const auto& cfg = sc.scheme_config;
    const int bits_per_sym = cfg.bits_per_symbol();
    const std::uint64_t bit_seed = splitmix64(frame_seed);
    const std::uint64_t noise_seed = splitmix64(frame_seed ^ 0x5851f42d4c957f2dULL);

    FrameResult res;
    if (cfg.scheme == Scheme::sc_qpsk) {
        const std::size_t n_symbols =
            static_cast<std::size_t>(cfg.n_subcarriers) * sc.frame_slots;
        const auto tx_bits = random_bits(n_symbols * 2, bit_seed);
        SampledSignal tx = sc_modulate(tx_bits, cfg);
        if (sc.dgd_norm > 0.0) {
            const double amp = sc_channel_amplitude(sc);
            for (auto& v : tx.samples) v *= amp;
        }
        const SampledSignal rx = through_channel(tx, sc, ebn0_db, noise_seed);
        const auto rx_bits = sc_demodulate(rx, cfg);
        res.bits = static_cast<long long>(tx_bits.size());
        for (std::size_t i = 0; i < tx_bits.size(); ++i)
            res.errors += (tx_bits[i] != rx_bits[i]);
        return res;
    }

    const int K = sc.frame_slots;
    const std::size_t n_bits =
        static_cast<std::size_t>(cfg.n_subcarriers) * K * bits_per_sym;
    const auto tx_bits = random_bits(n_bits, bit_seed);
    SymbolGrid grid = bits_to_grid(tx_bits, cfg, K);

    const bool faded = sc.dgd_norm > 0.0;
    const std::vector<cplx> gains = faded ? channel_gains(sc) : std::vector<cplx>{};
    if (faded) {
        // The channel is diagonal in the subcarrier basis, so it is applied
        // as a per-subcarrier scale on the transmitted symbols.
        for (int k = 0; k < K; ++k)
            for (int n = 0; n < cfg.n_subcarriers; ++n) grid.at(n, k) *= gains[n];
    }
    const bool zf = sc.equalization == Equalization::zf && faded;
    const Equalization eq = zf ? Equalization::zf : Equalization::none;
    const std::vector<cplx>* gains_ptr = zf ? &gains : nullptr;

    int k_first = 0, k_last = K;
    SymbolGrid rx_grid;
    if (cfg.scheme == Scheme::ofdm_qam) {
        const SampledSignal tx = ofdm_modulate(grid, cfg);
        const SampledSignal rx = through_channel(tx, sc, ebn0_db, noise_seed);
        rx_grid = ofdm_demodulate(rx, cfg, gains_ptr, eq);
    } else {
        const SampledSignal tx = fbmc_modulate(oqam_stagger(grid), cfg);
        const SampledSignal rx = through_channel(tx, sc, ebn0_db, noise_seed);
        rx_grid = oqam_destagger(fbmc_demodulate(rx, cfg, gains_ptr, eq));
        // filter transients: drop the edge slots from error accounting
        const int discard = (cfg.prototype.span_symbols + 1) / 2;
        k_first = discard;
        k_last = K - discard;
    }

    const auto rx_bits = grid_to_bits(rx_grid, cfg.qam_order, k_first, k_last);
    const std::size_t stride = static_cast<std::size_t>(cfg.n_subcarriers) * bits_per_sym;
    const std::size_t off = static_cast<std::size_t>(k_first) * stride;
    res.bits = static_cast<long long>(rx_bits.size());
    for (std::size_t i = 0; i < rx_bits.size(); ++i)
        res.errors += (tx_bits[off + i] != rx_bits[i]);
    return res;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(master ^ splitmix64(a)) ^ splitmix64(~b));
}

BerPoint simulate_ber(const Scenario& scenario, double ebn0_db) {
    if (scenario.min_errors < 1 || scenario.max_bits < 1)
        throw std::invalid_argument("simulate_ber: invalid stop rule");
    const std::uint64_t point_seed =
        derive_seed(scenario.seed, std::bit_cast<std::uint64_t>(ebn0_db));

    BerPoint pt;
    pt.ebn0_db = ebn0_db;
    std::uint64_t frame = 0;
    while (pt.bit_errors < scenario.min_errors && pt.bits_simulated < scenario.max_bits) {
        const FrameResult r = run_frame(scenario, ebn0_db, derive_seed(point_seed, frame));
        pt.bits_simulated += r.bits;
        pt.bit_errors += r.errors;
        ++frame;
    }
    if (pt.bit_errors == 0) {
        pt.censored = true;
        pt.ber = 1.0 / static_cast<double>(pt.bits_simulated);  // upper bound
    } else {
        pt.ber = static_cast<double>(pt.bit_errors) / static_cast<double>(pt.bits_simulated);
    }
    pt.ci95 = 1.96 * std::sqrt(pt.ber * (1.0 - pt.ber) / static_cast<double>(pt.bits_simulated));
    return pt;
}

BerCurve sweep_ebn0(const Scenario& scenario, const std::vector<double>& grid_db, int workers) {
    if (grid_db.empty()) throw std::invalid_argument("sweep_ebn0: empty grid");
    for (std::size_t i = 1; i < grid_db.size(); ++i)
        if (!(grid_db[i] > grid_db[i - 1]))
            throw std::invalid_argument("sweep_ebn0: grid must be ascending");

    BerCurve curve;
    curve.points.resize(grid_db.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < grid_db.size(); ++i)
            curve.points[i] = simulate_ber(scenario, grid_db[i]);
        return curve;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid_db.size()) return;
            curve.points[i] = simulate_ber(scenario, grid_db[i]);
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(workers, static_cast<int>(grid_db.size()));
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return curve;
}

double required_ebn0(const BerCurve& curve, double target_ber) {
    if (!(target_ber > 0.0)) throw std::invalid_argument("required_ebn0: target must be > 0");
    std::vector<const BerPoint*> usable;
    for (const auto& p : curve.points)
        if (!p.censored && p.bit_errors > 0) usable.push_back(&p);
    for (const auto* p : usable)
        if (p->ber == target_ber) return p->ebn0_db;
    for (std::size_t i = 0; i + 1 < usable.size(); ++i) {
        const BerPoint& a = *usable[i];
        const BerPoint& b = *usable[i + 1];
        if (a.ber >= target_ber && target_ber >= b.ber) {
            const double la = std::log10(a.ber), lb = std::log10(b.ber);
            const double lt = std::log10(target_ber);
            return a.ebn0_db + (b.ebn0_db - a.ebn0_db) * (lt - la) / (lb - la);
        }
    }
    throw unbracketed_target_error(
        "required_ebn0: target BER not bracketed by the sweep; extend the Eb/N0 grid");
}

PenaltyCurve measure_penalty(const Scenario& base, const std::vector<double>& dgd_norm_list,
                             double target_ber, const std::vector<double>& grid_db,
                             int workers) {
    Scenario baseline = base;
    baseline.dgd_norm = 0.0;
    const double req0 = required_ebn0(sweep_ebn0(baseline, grid_db, workers), target_ber);

    PenaltyCurve out;
    out.bit_interval = base.scheme_config.bit_interval();
    for (double dgd : dgd_norm_list) {
        PenaltyCurvePoint p;
        p.dgd_norm = dgd;
        if (dgd == 0.0) {
            p.required_ebn0_db = req0;
            p.penalty_db = 0.0;
        } else {
            Scenario sc = base;
            sc.dgd_norm = dgd;
            p.required_ebn0_db = required_ebn0(sweep_ebn0(sc, grid_db, workers), target_ber);
            p.penalty_db = p.required_ebn0_db - req0;
        }
        out.points.push_back(p);
    }
    return out;
}

}  // namespace pmdsim
