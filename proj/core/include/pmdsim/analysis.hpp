#pragma once

#include <vector>

namespace pmdsim {

enum class TimeNormalization { bit_interval, symbol_duration };

/// Everything the closed-form penalty expressions need.
struct PenaltyModel {
    double coefficient_a = 68.0;  // pulse-shape / receiver dependent constant
    double bit_interval = 1.0;    // T_b, seconds
    double symbol_duration = 1.0; // T = 1/nu0, seconds
    int n_subcarriers = 1;
    double gamma = 0.5;
    TimeNormalization time_normalization = TimeNormalization::symbol_duration;
};

struct WidthPair {
    double delta1 = 0.0;  // input RMS width, seconds
    double delta2 = 0.0;  // broadened RMS width, seconds
};

/// RMS width sqrt(<t^2> - <t>^2) of a nonnegative waveform treated as a time
/// density; rectangle-rule moments on the signal's own grid.
double rms_width(const std::vector<double>& intensity, double sample_period);

/// sqrt(delta1^2 + dgd^2 gamma (1 - gamma))
double broadened_width(double delta1, double dgd, double gamma);

/// 10 log10(delta2 / delta1), dB.
double penalty_exact(const WidthPair& widths);

/// Single-carrier closed form: A dgd^2 gamma (1 - gamma) / T_b^2, dB.
double penalty_sc(const PenaltyModel& model, double dgd);

/// Per-subcarrier closed form A gamma (1-gamma) n^2 dgd^2 / T^2, dB, with T
/// chosen by model.time_normalization (n is 1-based).
double penalty_subcarrier(const PenaltyModel& model, int n, double dgd);

/// Mean-power aggregation 10 log10((1/N) sum 10^(eps_n / 10)), dB.
double penalty_multicarrier(const std::vector<double>& subcarrier_penalties_db);

struct PenaltyCurvePoint {
    double dgd_norm = 0.0;          // dgd / T_b
    double required_ebn0_db = 0.0;
    double penalty_db = 0.0;
};

struct PenaltyCurve {
    double bit_interval = 1.0;  // T_b behind dgd_norm, seconds
    std::vector<PenaltyCurvePoint> points;
};

/// Least-squares fit of penalty against dgd^2 gamma (1-gamma) / time_base^2
/// through the origin; returns the fitted coefficient A.
double fit_coefficient_a(const PenaltyCurve& measured, double gamma, double time_base);

/// RMS residual (dB) of the fit returned by fit_coefficient_a.
double fit_residual_rms(const PenaltyCurve& measured, double gamma, double time_base,
                        double coefficient_a);

}  // namespace pmdsim
