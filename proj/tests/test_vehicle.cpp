#include <doctest.h>

#include <vector>

#include "fcev/drive_cycle.hpp"
#include "fcev/kernels.hpp"
#include "fcev/vehicle.hpp"

using namespace fcev;

TEST_SUITE("vehicle") {

TEST_CASE("road load") {
    const VehicleParams vp;
    const EnvironmentConstants env;
    auto r = mech_power(0, 0, vp, env);
    CHECK(r.acceleration == 0.0);
    CHECK(r.resistive == 0.0);
    CHECK(r.shaft == 0.0);

    r = mech_power(26.82, 0, vp, env);
    CHECK(r.resistive == doctest::Approx(18314.663510908806).epsilon(1e-12));
    CHECK(r.resistive / 26.82 == doctest::Approx(296.06898384 + 386.804376).epsilon(1e-12));

    r = mech_power(10, 1, vp, env);
    CHECK(r.acceleration == doctest::Approx(16429));
    CHECK(r.shaft == doctest::Approx(r.acceleration + r.resistive));

    double prev = 0.0;
    for (double v = 0.5; v < 50; v += 0.5) {
        const double p = mech_power(v, 0, vp, env).resistive;
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("shaft speed") {
    const VehicleParams vp;
    CHECK(motor_shaft_speed(0, vp, 5).electrical == 0.0);
    const auto s = motor_shaft_speed(26.82, vp, 5);
    CHECK(s.mechanical == doctest::Approx(637.6783216783216).epsilon(1e-12));
    CHECK(s.electrical == doctest::Approx(3188.391608391608).epsilon(1e-12));
    CHECK(motor_shaft_speed(2 * 26.82, vp, 5).electrical == doctest::Approx(2 * s.electrical).epsilon(1e-15));
}

TEST_CASE("central difference and batch road load") {
    const std::vector<double> t{0, 1, 2, 4, 5};
    const std::vector<double> v{0, 2, 6, 10, 10};
    const auto a = central_difference(t, v);
    CHECK(a[0] == doctest::Approx(2));
    CHECK(a[1] == doctest::Approx(3));
    CHECK(a[2] == doctest::Approx(8.0 / 3.0));
    CHECK(a[3] == doctest::Approx(4.0 / 3.0));
    CHECK(a[4] == doctest::Approx(0));

    const VehicleParams vp;
    const EnvironmentConstants env;
    const auto s = road_load_series(v, a, vp, env);
    for (std::size_t k = 0; k < v.size(); ++k) {
        const auto r = mech_power(v[k], a[k], vp, env);
        CHECK(s.shaft[k] == doctest::Approx(r.shaft).epsilon(1e-13));
        CHECK(s.acceleration[k] == doctest::Approx(r.acceleration).epsilon(1e-13));
    }
}

TEST_CASE("kinetic energy telescopes over shipped cycles") {
    const VehicleParams vp;
    const EnvironmentConstants env;
    for (const char* name : {"hwfet", "udds"}) {
        const auto c = load_cycle(std::string(FCEV_DATA_DIR) + "/cycles/" + name + ".csv");
        const auto a = central_difference(c.time, c.speed);
        const auto s = road_load_series(c.speed, a, vp, env);
        std::vector<double> positive(s.acceleration.size());
        for (std::size_t k = 0; k < positive.size(); ++k) positive[k] = std::max(s.shaft[k], 0.0);
        const auto& kt = kernels::active();
        const double net = kt.trapezoid(c.time.data(), s.acceleration.data(), c.size());
        const double gross = kt.trapezoid(c.time.data(), positive.data(), c.size());
        CHECK(std::abs(net) < 1e-3 * gross);
    }
}

}
