#include "pmdsim/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "pmdsim/errors.hpp"

namespace pmdsim {

double rms_width(const std::vector<double>& intensity, double sample_period) {
    if (!(sample_period > 0.0))
        throw std::invalid_argument("rms_width: sample_period must be > 0");
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    bool positive = false;
    for (std::size_t i = 0; i < intensity.size(); ++i) {
        const double v = intensity[i];
        if (v < 0.0) throw std::invalid_argument("rms_width: negative sample");
        if (v > 0.0) positive = true;
        const double t = static_cast<double>(i) * sample_period;
        m0 += v;
        m1 += v * t;
        m2 += v * t * t;
    }
    if (!positive) throw std::invalid_argument("rms_width: all-zero waveform");
    const double mean = m1 / m0;
    // each sample is a constant-density cell of width sample_period; the cell
    // second moment keeps a coarsely sampled rectangle exact
    const double var = m2 / m0 - mean * mean + sample_period * sample_period / 12.0;
    return std::sqrt(std::max(var, 0.0));
}

double broadened_width(double delta1, double dgd, double gamma) {
    if (delta1 < 0.0) throw std::invalid_argument("broadened_width: negative delta1");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::invalid_argument("broadened_width: gamma outside [0, 1]");
    return std::sqrt(delta1 * delta1 + dgd * dgd * gamma * (1.0 - gamma));
}

double penalty_exact(const WidthPair& widths) {
    if (!(widths.delta1 > 0.0)) throw std::invalid_argument("penalty_exact: delta1 must be > 0");
    return 10.0 * std::log10(widths.delta2 / widths.delta1);
}

double penalty_sc(const PenaltyModel& model, double dgd) {
    if (!(model.gamma >= 0.0 && model.gamma <= 1.0))
        throw std::invalid_argument("penalty_sc: gamma outside [0, 1]");
    return model.coefficient_a * dgd * dgd * model.gamma * (1.0 - model.gamma) /
           (model.bit_interval * model.bit_interval);
}

double penalty_subcarrier(const PenaltyModel& model, int n, double dgd) {
    if (n < 1 || n > model.n_subcarriers)
        throw std::invalid_argument("penalty_subcarrier: subcarrier index out of range");
    const double t = (model.time_normalization == TimeNormalization::symbol_duration)
                         ? model.symbol_duration
                         : model.bit_interval;
    const double nn = static_cast<double>(n);
    return model.coefficient_a * model.gamma * (1.0 - model.gamma) * nn * nn * dgd * dgd /
           (t * t);
}

double penalty_multicarrier(const std::vector<double>& subcarrier_penalties_db) {
    if (subcarrier_penalties_db.empty())
        throw std::invalid_argument("penalty_multicarrier: empty input");
    double acc = 0.0;
    for (double e : subcarrier_penalties_db) acc += std::pow(10.0, e / 10.0);
    return 10.0 * std::log10(acc / static_cast<double>(subcarrier_penalties_db.size()));
}

namespace {

double fit_abscissa(const PenaltyCurvePoint& p, const PenaltyCurve& curve, double gamma,
                    double time_base) {
    const double dgd = p.dgd_norm * curve.bit_interval;
    return dgd * dgd * gamma * (1.0 - gamma) / (time_base * time_base);
}

}  // namespace

double fit_coefficient_a(const PenaltyCurve& measured, double gamma, double time_base) {
    double sxx = 0.0, sxy = 0.0;
    int used = 0;
    for (const auto& p : measured.points) {
        if (p.dgd_norm <= 0.0) continue;
        const double x = fit_abscissa(p, measured, gamma, time_base);
        sxx += x * x;
        sxy += x * p.penalty_db;
        ++used;
    }
    if (used < 1 || sxx == 0.0)
        throw degenerate_fit_error("fit_coefficient_a: no points with dgd > 0");
    return sxy / sxx;
}

double fit_residual_rms(const PenaltyCurve& measured, double gamma, double time_base,
                        double coefficient_a) {
    double acc = 0.0;
    int used = 0;
    for (const auto& p : measured.points) {
        if (p.dgd_norm <= 0.0) continue;
        const double x = fit_abscissa(p, measured, gamma, time_base);
        const double r = p.penalty_db - coefficient_a * x;
        acc += r * r;
        ++used;
    }
    if (used < 1) throw degenerate_fit_error("fit_residual_rms: no points with dgd > 0");
    return std::sqrt(acc / used);
}

}  // namespace pmdsim
