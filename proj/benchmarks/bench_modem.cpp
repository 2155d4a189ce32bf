#include <benchmark/benchmark.h>

#include <random>

#include "pmdsim/mc.hpp"
#include "pmdsim/modem.hpp"
#include "pmdsim/pmd_channel.hpp"
#include "pmdsim/prototype.hpp"

using namespace pmdsim;

namespace {

SchemeConfig multicarrier_config(Scheme scheme) {
    SchemeConfig cfg;
    cfg.scheme = scheme;
    cfg.n_subcarriers = 128;
    cfg.oversampling = 2;
    cfg.prototype = (scheme == Scheme::fbmc_oqam) ? srrc_prototype(1.0, 4, 256)
                                                  : rect_prototype(256);
    return cfg;
}

SymbolGrid random_grid(int n, int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> bit(0, 1);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n) * k * 2);
    for (auto& b : bits) b = static_cast<std::uint8_t>(bit(rng));
    SymbolGrid grid(n, k, false);
    grid.values = qam_map(bits, 4);
    return grid;
}

void bm_ofdm_roundtrip(benchmark::State& state) {
    const SchemeConfig cfg = multicarrier_config(Scheme::ofdm_qam);
    const SymbolGrid grid = random_grid(128, 16, 1);
    for (auto _ : state) {
        const SampledSignal tx = ofdm_modulate(grid, cfg);
        benchmark::DoNotOptimize(ofdm_demodulate(tx, cfg));
    }
    state.SetItemsProcessed(state.iterations() * grid.values.size());
}
BENCHMARK(bm_ofdm_roundtrip);

void bm_fbmc_roundtrip(benchmark::State& state) {
    const SchemeConfig cfg = multicarrier_config(Scheme::fbmc_oqam);
    const SymbolGrid grid = oqam_stagger(random_grid(128, 16, 2));
    for (auto _ : state) {
        const SampledSignal tx = fbmc_modulate(grid, cfg);
        benchmark::DoNotOptimize(fbmc_demodulate(tx, cfg));
    }
    state.SetItemsProcessed(state.iterations() * grid.values.size());
}
BENCHMARK(bm_fbmc_roundtrip);

void bm_fractional_delay(benchmark::State& state) {
    SampledSignal s;
    s.sample_rate = 1.0;
    s.samples.assign(1 << 14, cplx(1.0, 0.5));
    for (auto _ : state) benchmark::DoNotOptimize(fractional_delay(s, 3.25));
}
BENCHMARK(bm_fractional_delay);

void bm_simulate_ber_point(benchmark::State& state) {
    Scenario sc;
    sc.scheme_config = multicarrier_config(Scheme::ofdm_qam);
    sc.dgd_norm = 0.3;
    sc.min_errors = 50;
    sc.max_bits = 100'000;
    for (auto _ : state) benchmark::DoNotOptimize(simulate_ber(sc, 6.0));
}
BENCHMARK(bm_simulate_ber_point);

}  // namespace

BENCHMARK_MAIN();
