#include "pmdsim/signal.hpp"

#include <stdexcept>

#include "pmdsim/errors.hpp"

namespace pmdsim {

double signal_energy(const SampledSignal& s) {
    double e = 0.0;
    for (const cplx& x : s.samples) e += std::norm(x);
    return e;
}

double mean_power(const SampledSignal& s) {
    if (s.samples.empty()) throw std::invalid_argument("mean_power: empty signal");
    return signal_energy(s) / static_cast<double>(s.samples.size());
}

SampledSignal crop(const SampledSignal& s, long start, std::size_t length) {
    const long begin = s.epoch_offset + start;
    if (begin < 0 || static_cast<std::size_t>(begin) + length > s.samples.size())
        throw framing_error("crop: window outside sample buffer");
    SampledSignal out;
    out.sample_rate = s.sample_rate;
    out.epoch_offset = 0;
    out.samples.assign(s.samples.begin() + begin, s.samples.begin() + begin + length);
    return out;
}

double grid_energy(const SymbolGrid& g) {
    double e = 0.0;
    for (const cplx& x : g.values) e += std::norm(x);
    return e;
}

}  // namespace pmdsim
