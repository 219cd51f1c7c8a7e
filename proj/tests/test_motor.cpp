#include <doctest.h>

#include <cmath>

#include "fcev/error.hpp"
#include "fcev/motor.hpp"

using namespace fcev;

TEST_SUITE("motor") {

TEST_CASE("steady-state voltages") {
    const MotorParams mp;
    auto v = steady_state_voltages({0, 0}, 0, mp);
    CHECK(v.d == 0.0);
    CHECK(v.q == 0.0);

    v = steady_state_voltages({0, 100}, 1000, mp);
    CHECK(v.d == doctest::Approx(-83.8).epsilon(1e-12));
    CHECK(v.q == doctest::Approx(131.5).epsilon(1e-12));

    v = steady_state_voltages({-50, 0}, 1000, mp);
    CHECK(v.d == doctest::Approx(-2.25).epsilon(1e-12));
    CHECK(v.q == doctest::Approx(85.1).epsilon(1e-12));
}

TEST_CASE("electrical power") {
    CHECK(electrical_power({0, 100}, {0, 200}) == doctest::Approx(30000));
    CHECK(electrical_power({0, 0}, {0, 0}) == 0.0);
    CHECK(electrical_power({-83.8, 131.5}, {0, 100}) == doctest::Approx(19725));

    const Dq v{12.5, -7.0}, i{3.0, 41.0};
    CHECK(electrical_power(3.0 * v, 3.0 * i) == doctest::Approx(9.0 * electrical_power(v, i)).epsilon(1e-14));
}

TEST_CASE("copper loss") {
    CHECK(motor_copper_loss(0, 45e-3) == 0.0);
    CHECK(motor_copper_loss_from_peak(400, 45e-3) == doctest::Approx(10800));
    CHECK(motor_copper_loss(400 / std::sqrt(2.0), 45e-3) == doctest::Approx(10800));
    CHECK(motor_copper_loss_from_peak(100, 45e-3) == doctest::Approx(675));
}

TEST_CASE("power bookkeeping at i_d = 0") {
    const MotorParams mp;
    const double we = 2000.0;
    const double iq = 150.0;
    const auto op = make_operating_point({0, iq}, we, mp);
    const double wm = we / mp.pole_pairs;
    const double shaft = wm * torque(op.current, mp);
    CHECK(electrical_power(op.voltage, op.current) ==
          doctest::Approx(shaft + 1.5 * mp.resistance * iq * iq).epsilon(1e-13));
}

TEST_CASE("operating point solver") {
    const MotorParams mp;
    SUBCASE("zero power") {
        const auto op = solve_operating_point(0, 1234, mp, 400, 800);
        CHECK(op.current.d == 0.0);
        CHECK(op.current.q == 0.0);
    }
    SUBCASE("no field weakening needed") {
        const auto op = solve_operating_point(30e3, 3188, mp, 500, 800);
        CHECK(op.current.d == 0.0);
        const auto v = steady_state_voltages(op.current, 3188, mp);
        CHECK(std::abs(v.d - op.voltage.d) < 1e-9);
        CHECK(std::abs(v.q - op.voltage.q) < 1e-9);
        CHECK(torque(op.current, mp) * 3188 / mp.pole_pairs == doctest::Approx(30e3).epsilon(1e-12));
        CHECK(op.voltage_peak() <= 500.0);
    }
    SUBCASE("field weakening to the limit") {
        const auto op = solve_operating_point(30e3, 3188, mp, 150, 800);
        CHECK(op.current.d < 0.0);
        CHECK(op.voltage_peak() == doctest::Approx(150).epsilon(1e-8));
        CHECK(std::abs(op.voltage_peak() - 150.0) < 1e-6);
        // A grid scan over i_d at the fixed i_q finds nothing feasible closer to zero.
        const double iq = op.current.q;
        for (double id = op.current.d + 0.05; id <= 0.0; id += 0.05) {
            CHECK(make_operating_point({id, iq}, 3188, mp).voltage_peak() > 150.0);
        }
    }
    SUBCASE("branches meet at the boundary") {
        const double we = 2500.0;
        const auto at_zero = make_operating_point({0, torque_current(40e3, we, mp)}, we, mp);
        const auto op = solve_operating_point(40e3, we, mp, at_zero.voltage_peak(), 800);
        CHECK(std::abs(op.voltage_peak() - at_zero.voltage_peak()) < 1e-6);
        CHECK(std::abs(op.current.d) < 1e-3);
    }
    SUBCASE("infeasible limit") {
        try {
            solve_operating_point(30e3, 3188, mp, 20, 800);
            FAIL("expected Infeasible");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::infeasible);
        }
    }
    SUBCASE("power at zero speed") {
        try {
            solve_operating_point(1e3, 0, mp, 400, 800);
            FAIL("expected ZeroSpeedPower");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::zero_speed_power);
        }
    }
}

TEST_CASE("parameter validation") {
    MotorParams mp;
    mp.pole_pairs = 0;
    CHECK_THROWS_AS(mp.validate(), Error);
    mp = MotorParams{};
    mp.flux_linkage = -1;
    CHECK_THROWS_AS(mp.validate(), Error);
}

}
