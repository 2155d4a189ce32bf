#include "pmdsim/prototype.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace pmdsim {

namespace {

constexpr double kDefectFloorDb = -300.0;

void normalize_unit_energy(std::vector<double>& taps, int sps) {
    double e = 0.0;
    for (double t : taps) e += t * t;
    if (e <= 0.0) throw std::invalid_argument("prototype: zero-energy taps");
    const double scale = std::sqrt(static_cast<double>(sps) / e);
    for (double& t : taps) t *= scale;
}

// SRRC impulse response for unit symbol duration, t in symbol units.
double srrc_value(double t, double beta) {
    const double pi = std::numbers::pi;
    if (t == 0.0) return 1.0 - beta + 4.0 * beta / pi;
    const double singular = 1.0 / (4.0 * beta);
    if (std::abs(std::abs(t) - singular) < 1e-12) {
        return beta / std::numbers::sqrt2 *
               ((1.0 + 2.0 / pi) * std::sin(pi / (4.0 * beta)) +
                (1.0 - 2.0 / pi) * std::cos(pi / (4.0 * beta)));
    }
    const double num = std::sin(pi * t * (1.0 - beta)) +
                       4.0 * beta * t * std::cos(pi * t * (1.0 + beta));
    const double den = pi * t * (1.0 - 16.0 * beta * beta * t * t);
    return num / den;
}

}  // namespace

std::vector<double> Prototype::discrete_taps() const {
    std::vector<double> out(taps);
    double e = 0.0;
    for (double t : out) e += t * t;
    const double scale = 1.0 / std::sqrt(e);
    for (double& t : out) t *= scale;
    return out;
}

Prototype rect_prototype(int samples_per_symbol) {
    if (samples_per_symbol < 1)
        throw std::invalid_argument("rect_prototype: samples_per_symbol must be >= 1");
    Prototype p;
    p.kind = PrototypeKind::rectangular;
    p.samples_per_symbol = samples_per_symbol;
    p.span_symbols = 1;
    p.taps.assign(static_cast<std::size_t>(samples_per_symbol), 1.0);
    return p;
}

Prototype srrc_prototype(double rolloff, int span_symbols, int samples_per_symbol) {
    if (!(rolloff > 0.0 && rolloff <= 1.0))
        throw std::invalid_argument("srrc_prototype: rolloff must be in (0, 1]");
    if (span_symbols < 1 || span_symbols % 2 != 0)
        throw std::invalid_argument("srrc_prototype: span_symbols must be positive and even");
    if (samples_per_symbol < 1)
        throw std::invalid_argument("srrc_prototype: samples_per_symbol must be >= 1");

    Prototype p;
    p.kind = PrototypeKind::srrc;
    p.rolloff = rolloff;
    p.samples_per_symbol = samples_per_symbol;
    p.span_symbols = span_symbols;

    const int len = span_symbols * samples_per_symbol + 1;
    const int center = len / 2;
    p.taps.resize(len);
    // fill one half and mirror so symmetry is exact in floating point
    for (int i = 0; i <= center; ++i) {
        const double t = static_cast<double>(i - center) / samples_per_symbol;
        const double v = srrc_value(t, rolloff);
        p.taps[i] = v;
        p.taps[len - 1 - i] = v;
    }
    normalize_unit_energy(p.taps, samples_per_symbol);
    return p;
}

double orthogonality_defect(const Prototype& p, int n_subcarriers, int neighborhood,
                            OrthoBasis basis) {
    if (n_subcarriers < 1)
        throw std::invalid_argument("orthogonality_defect: n_subcarriers must be >= 1");
    if (neighborhood < 1)
        throw std::invalid_argument("orthogonality_defect: neighborhood must be >= 1");

    const int sps = p.samples_per_symbol;
    const int shift = (basis == OrthoBasis::fbmc_real) ? sps / 2 : sps;
    if (basis == OrthoBasis::fbmc_real && sps % 2 != 0)
        throw std::invalid_argument("orthogonality_defect: fbmc basis needs even samples_per_symbol");

    const auto& a = p.taps;
    const int len = static_cast<int>(a.size());

    double norm = 0.0;
    for (double v : a) norm += v * v;

    const std::complex<double> junit(0.0, 1.0);
    double worst = 0.0;
    for (int dn = -neighborhood; dn <= neighborhood; ++dn) {
        for (int dk = -neighborhood; dk <= neighborhood; ++dk) {
            if (dn == 0 && dk == 0) continue;
            const int off = dk * shift;
            std::complex<double> acc(0.0, 0.0);
            for (int s = 0; s < len; ++s) {
                const int sb = s - off;
                if (sb < 0 || sb >= len) continue;
                const double ang = 2.0 * std::numbers::pi * dn * s / sps;
                acc += a[s] * a[sb] * std::complex<double>(std::cos(ang), std::sin(ang));
            }
            acc *= std::pow(junit, static_cast<double>(((dn + dk) % 4 + 4) % 4));
            const double term = (basis == OrthoBasis::fbmc_real) ? std::abs(acc.real())
                                                                 : std::abs(acc);
            worst = std::max(worst, term / norm);
        }
    }
    if (worst <= 0.0) return kDefectFloorDb;
    return std::max(kDefectFloorDb, 20.0 * std::log10(worst));
}

}  // namespace pmdsim
