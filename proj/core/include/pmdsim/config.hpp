#pragma once

#include <string>
#include <vector>

#include "pmdsim/analysis.hpp"
#include "pmdsim/mc.hpp"

namespace pmdsim {

/// Config file is rejected with this, naming the key and line.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Command { ber_sweep, penalty, analytic, ortho_check, fit_a };

/// Flat key = value run configuration; defaults follow the reference
/// N = 128, nu0 = 100 MHz, gamma = 0.5, QPSK, SRRC rolloff 1, span 4 setup.
struct RunConfig {
    Scheme scheme = Scheme::ofdm_qam;
    int n_subcarriers = 128;
    double subcarrier_spacing_hz = 1e8;
    int qam_order = 4;
    int cp_samples = 0;
    int oversampling = 2;
    PrototypeKind prototype_kind = PrototypeKind::srrc;
    double rolloff = 1.0;
    int span_symbols = 4;
    double gamma = 0.5;
    Equalization equalization = Equalization::none;
    std::uint64_t seed = 1;
    long long min_errors = 100;
    long long max_bits = 20'000'000;
    int frame_slots = 16;
    std::vector<double> dgd_norm = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    double target_ber = 1e-3;
    double ebn0_start = 4.0;
    double ebn0_stop = 12.0;
    double ebn0_step = 1.0;
    double coefficient_a = 68.0;
    TimeNormalization time_normalization = TimeNormalization::symbol_duration;
    int neighborhood = 3;

    SchemeConfig scheme_config() const;
    Scenario scenario() const;
    std::vector<double> ebn0_grid() const;
};

/// Parses and validates a flat key = value document ('#' comments). Unknown
/// keys, type mismatches and out-of-range values raise config_error naming
/// the key and line.
RunConfig parse_config(const std::string& text);

/// Reads, parses and validates a config file.
RunConfig load_config(const std::string& path);

/// Executes a command and writes its CSV to out_path. Throws on I/O or
/// simulation errors; identical config + seed yields byte-identical output.
void run_command(Command command, const RunConfig& config, const std::string& out_path,
                 int workers = 1);

/// Decimal formatting used in every CSV cell: 9 significant digits.
std::string format_number(double v);

}  // namespace pmdsim
