#include <doctest.h>

#include <cmath>
#include <vector>

#include "pmdsim/errors.hpp"
#include "pmdsim/mc.hpp"

using namespace pmdsim;

namespace {

double qfunc(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double qpsk_ber_theory(double ebn0_db) {
    return qfunc(std::sqrt(2.0 * std::pow(10.0, ebn0_db / 10.0)));
}

Scenario sc_scenario() {
    Scenario s;
    s.scheme_config.scheme = Scheme::sc_qpsk;
    s.scheme_config.n_subcarriers = 1;
    s.scheme_config.oversampling = 2;
    s.scheme_config.prototype = srrc_prototype(1.0, 4, 2);
    s.dgd_norm = 0.0;
    s.seed = 7;
    s.min_errors = 400;
    s.max_bits = 4'000'000;
    return s;
}

}  // namespace

TEST_CASE("seed derivation separates substreams") {
    const std::uint64_t a = derive_seed(1, 0, 0);
    CHECK(derive_seed(1, 0, 0) == a);
    CHECK(derive_seed(1, 1, 0) != a);
    CHECK(derive_seed(1, 0, 1) != a);
    CHECK(derive_seed(2, 0, 0) != a);
}

TEST_CASE("awgn-only qpsk matches the closed-form error rate") {
    const Scenario s = sc_scenario();
    for (double ebn0 : {0.0, 4.0}) {
        const BerPoint p = simulate_ber(s, ebn0);
        const double theory = qpsk_ber_theory(ebn0);
        CHECK_FALSE(p.censored);
        CHECK(p.bit_errors >= s.min_errors);
        // binomial 3-sigma band around the analytic value
        const double sigma =
            std::sqrt(theory * (1.0 - theory) / static_cast<double>(p.bits_simulated));
        CHECK(std::abs(p.ber - theory) <= 3.0 * sigma);
        CHECK(p.ci95 == doctest::Approx(1.96 * std::sqrt(p.ber * (1.0 - p.ber) /
                                                         static_cast<double>(p.bits_simulated)))
                            .epsilon(1e-12));
    }
}

TEST_CASE("simulation is deterministic in the seed") {
    const Scenario s = sc_scenario();
    const BerPoint a = simulate_ber(s, 3.0);
    const BerPoint b = simulate_ber(s, 3.0);
    CHECK(a.bit_errors == b.bit_errors);
    CHECK(a.bits_simulated == b.bits_simulated);

    Scenario other = s;
    other.seed = 8;
    const BerPoint c = simulate_ber(other, 3.0);
    CHECK((c.bit_errors != a.bit_errors || c.bits_simulated != a.bits_simulated));
}

TEST_CASE("censoring at max_bits with zero errors") {
    Scenario s = sc_scenario();
    s.max_bits = 20'000;
    const BerPoint p = simulate_ber(s, 40.0);  // error-free at this SNR
    CHECK(p.censored);
    CHECK(p.bit_errors == 0);
    CHECK(p.ber == doctest::Approx(1.0 / static_cast<double>(p.bits_simulated)));
}

TEST_CASE("sweep validates the grid and is order-deterministic") {
    Scenario s = sc_scenario();
    s.min_errors = 50;
    s.max_bits = 200'000;
    const std::vector<double> grid = {0.0, 2.0, 4.0};
    const BerCurve serial = sweep_ebn0(s, grid, 1);
    REQUIRE(serial.points.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(serial.points[i].ebn0_db == grid[i]);
    const BerCurve parallel = sweep_ebn0(s, grid, 2);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(parallel.points[i].bit_errors == serial.points[i].bit_errors);
        CHECK(parallel.points[i].bits_simulated == serial.points[i].bits_simulated);
    }

    CHECK_THROWS_AS(sweep_ebn0(s, {2.0, 1.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(sweep_ebn0(s, {}, 1), std::invalid_argument);
}

TEST_CASE("required eb/n0 interpolation") {
    BerCurve curve;
    auto add = [&](double ebn0, double ber) {
        BerPoint p;
        p.ebn0_db = ebn0;
        p.ber = ber;
        p.bits_simulated = 1'000'000;
        p.bit_errors = static_cast<long long>(ber * 1e6);
        curve.points.push_back(p);
    };
    add(6.0, 1e-2);
    add(8.0, 1e-4);
    // log10(BER) is linear between the points: 1e-3 sits exactly halfway
    CHECK(required_ebn0(curve, 1e-3) == doctest::Approx(7.0).epsilon(1e-12));
    // exact hits return the grid point itself
    CHECK(required_ebn0(curve, 1e-2) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(required_ebn0(curve, 1e-4) == doctest::Approx(8.0).epsilon(1e-12));

    CHECK_THROWS_AS(required_ebn0(curve, 1e-6), unbracketed_target_error);
    CHECK_THROWS_AS(required_ebn0(curve, 0.5), unbracketed_target_error);

    // censored points are ignored when bracketing
    BerCurve censored = curve;
    BerPoint tail;
    tail.ebn0_db = 10.0;
    tail.bits_simulated = 1'000'000;
    tail.ber = 1e-6;
    tail.censored = true;
    censored.points.push_back(tail);
    CHECK_THROWS_AS(required_ebn0(censored, 1e-5), unbracketed_target_error);
}

TEST_CASE("penalty measurement uses a shared baseline") {
    Scenario s = sc_scenario();
    s.min_errors = 200;
    s.max_bits = 2'000'000;
    const std::vector<double> grid = {2.0, 4.0, 6.0, 8.0, 10.0};
    const PenaltyCurve pc = measure_penalty(s, {0.0, 0.3}, 1e-3, grid, 1);
    REQUIRE(pc.points.size() == 2);
    CHECK(pc.points[0].dgd_norm == 0.0);
    CHECK(pc.points[0].penalty_db == 0.0);
    CHECK(pc.points[1].dgd_norm == 0.3);
    // a real spread penalty, but bounded by the quadratic law's ballpark
    CHECK(pc.points[1].penalty_db > 0.0);
    CHECK(pc.points[1].penalty_db < 3.0);
    CHECK(pc.points[1].required_ebn0_db ==
          doctest::Approx(pc.points[0].required_ebn0_db + pc.points[1].penalty_db)
              .epsilon(1e-12));
}
