#pragma once

#include <stdexcept>

namespace pmdsim {

/// Signal length inconsistent with the expected slot/frame structure.
struct framing_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// BER target not bracketed by two curve points with nonzero BER.
struct unbracketed_target_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Least-squares fit has no usable abscissae.
struct degenerate_fit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pmdsim
