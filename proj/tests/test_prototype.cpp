#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pmdsim/analysis.hpp"
#include "pmdsim/prototype.hpp"

using namespace pmdsim;

namespace {

double tap_energy(const Prototype& p) {
    double e = 0.0;
    for (double t : p.taps) e += t * t;
    return e / p.samples_per_symbol;
}

void check_symmetric(const Prototype& p) {
    const std::size_t n = p.taps.size();
    for (std::size_t i = 0; i < n / 2; ++i)
        CHECK(p.taps[i] == doctest::Approx(p.taps[n - 1 - i]).epsilon(1e-12));
}

// independent oracle: direct convolution of the taps with themselves
std::vector<double> self_convolve(const std::vector<double>& h) {
    std::vector<double> out(2 * h.size() - 1, 0.0);
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j) out[i + j] += h[i] * h[j];
    return out;
}

}  // namespace

TEST_CASE("rectangular prototype is a unit-energy window") {
    const Prototype p = rect_prototype(4);
    REQUIRE(p.taps.size() == 4);
    for (double t : p.taps) CHECK(t == doctest::Approx(1.0));
    CHECK(tap_energy(p) == doctest::Approx(1.0).epsilon(1e-12));

    const Prototype single = rect_prototype(1);
    REQUIRE(single.taps.size() == 1);
    CHECK(single.taps[0] == doctest::Approx(1.0));

    CHECK_THROWS_AS(rect_prototype(0), std::invalid_argument);
}

TEST_CASE("rectangular intensity has the analytic rectangle RMS width") {
    for (int sps : {4, 16, 128}) {
        const Prototype p = rect_prototype(sps);
        std::vector<double> intensity;
        for (double t : p.taps) intensity.push_back(t * t);
        const double dt = 1.0 / sps;  // symbol duration 1
        CHECK(rms_width(intensity, dt) ==
              doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(1e-9));
    }
}

TEST_CASE("srrc prototype shape contracts") {
    const Prototype p = srrc_prototype(1.0, 4, 8);
    CHECK(p.taps.size() == 33);
    check_symmetric(p);
    CHECK(tap_energy(p) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(srrc_prototype(0.0, 4, 8), std::invalid_argument);
    CHECK_THROWS_AS(srrc_prototype(1.2, 4, 8), std::invalid_argument);
    CHECK_THROWS_AS(srrc_prototype(0.5, 3, 8), std::invalid_argument);
}

TEST_CASE("srrc self-convolution is root-Nyquist under truncation") {
    const int sps = 16;
    const Prototype p = srrc_prototype(1.0, 4, sps);
    std::vector<double> g = p.taps;
    double e = 0.0;
    for (double t : g) e += t * t;
    for (double& t : g) t /= std::sqrt(e);

    const auto rc = self_convolve(g);
    const std::size_t mid = g.size() - 1;
    CHECK(rc[mid] == doctest::Approx(1.0).epsilon(1e-12));
    // truncation to 4 symbols leaves ~1.2e-3 residual ISI at symbol lags
    for (std::size_t lag = sps; mid + lag < rc.size(); lag += sps) {
        CHECK(std::abs(rc[mid + lag]) <= 2e-3);
        CHECK(std::abs(rc[mid - lag]) <= 2e-3);
    }
}

TEST_CASE("srrc is continuous across the singular-point handling") {
    const Prototype a = srrc_prototype(1.0, 4, 8);
    const Prototype b = srrc_prototype(0.999, 4, 8);
    for (std::size_t i = 0; i < a.taps.size(); ++i)
        CHECK(std::abs(a.taps[i] - b.taps[i]) <= 1e-2);
}

TEST_CASE("ofdm rectangular basis is exactly orthogonal") {
    const Prototype p = rect_prototype(64);
    CHECK(orthogonality_defect(p, 16, 3, OrthoBasis::ofdm_complex) <= -200.0);
}

TEST_CASE("fbmc srrc basis defect and matched term") {
    const Prototype p = srrc_prototype(1.0, 4, 128);
    const double defect = orthogonality_defect(p, 64, 3, OrthoBasis::fbmc_real);
    CHECK(defect <= -30.0);

    // time reversal leaves the defect unchanged (symmetric filter)
    Prototype rev = p;
    std::reverse(rev.taps.begin(), rev.taps.end());
    CHECK(orthogonality_defect(rev, 64, 3, OrthoBasis::fbmc_real) ==
          doctest::Approx(defect).epsilon(1e-9));

    CHECK_THROWS_AS(orthogonality_defect(p, 64, 0, OrthoBasis::fbmc_real),
                    std::invalid_argument);
}
