#pragma once

#include <vector>

namespace pmdsim {

enum class PrototypeKind { rectangular, srrc };

/// Pulse-shape common to all filter-bank branches. Taps are sampled at
/// samples_per_symbol points per symbol duration and carry unit energy under
/// the continuous-time convention: sum(taps^2) / samples_per_symbol == 1.
struct Prototype {
    std::vector<double> taps;
    int samples_per_symbol = 1;
    PrototypeKind kind = PrototypeKind::rectangular;
    double rolloff = 0.0;  // srrc only
    int span_symbols = 1;

    /// Taps rescaled to unit discrete energy (sum of squares == 1).
    std::vector<double> discrete_taps() const;
};

/// Constant-amplitude window over one symbol duration.
Prototype rect_prototype(int samples_per_symbol);

/// Truncated square-root raised cosine, odd length span*sps + 1 with exact
/// center tap. Removable singularities are filled with their analytic limits.
Prototype srrc_prototype(double rolloff, int span_symbols, int samples_per_symbol);

/// Inner-product convention for the cross-term scan.
enum class OrthoBasis {
    ofdm_complex,  // nu0 * tau0 = 1 grid, full complex inner product
    fbmc_real      // nu0 * tau0 = 1/2 grid, j^(n+k) phases, real part only
};

/// Worst residual cross-term |<g_{n,k}, g_{n',k'}>| over all grid offsets
/// (dn, dk) != (0,0) with |dn|,|dk| <= neighborhood, in dB relative to the
/// matched term. Exact orthogonality is clamped to the -300 dB floor.
double orthogonality_defect(const Prototype& p, int n_subcarriers, int neighborhood,
                            OrthoBasis basis);

}  // namespace pmdsim
