#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fcev/error.hpp"
#include "fcev/losses.hpp"

using namespace fcev;
using std::numbers::pi;

namespace {

InverterConditions conditions(double i, double m, double cos_phi, double vdc = 300, double fsw = 10e3) {
    InverterConditions c;
    c.current_peak = i;
    c.modulation = m;
    c.displacement = cos_phi;
    c.dc_voltage = vdc;
    c.switching_frequency = fsw;
    return c;
}

}  // namespace

TEST_SUITE("losses") {

TEST_CASE("table rows") {
    const auto m = fs400r07a3e3();
    CHECK(m.label == "FS400R07A3E3");
    CHECK(m.blocking_voltage == 705);
    CHECK(m.nominal_voltage == 300);
    CHECK(m.nominal_current == 400);
    CHECK(m.igbt_threshold == 0.798);
    CHECK(m.diode_threshold == 0.95);
    CHECK(m.igbt_resistance == 2.2e-3);
    CHECK(m.diode_resistance == 1.4e-3);
    CHECK(m.turn_on_energy == 2.24e-3);
    CHECK(m.turn_off_energy == 8.165e-3);
    CHECK(m.recovery_energy == 5.151e-3);
    for (const auto& row : default_modules()) CHECK_NOTHROW(row.validate());
    CHECK(find_module(default_modules(), "FF450R12KT4P").nominal_current == 450);
    CHECK_THROWS_AS(find_module(default_modules(), "nope"), Error);
}

TEST_CASE("conduction closed form") {
    const auto mod = fs400r07a3e3();
    auto l = conduction_losses(conditions(0, 1, 1), mod);
    CHECK(l.igbt == 0.0);
    CHECK(l.diode == 0.0);

    l = conduction_losses(conditions(400, 1, 1), mod);
    CHECK(l.igbt == doctest::Approx(172.05061781383114).epsilon(1e-12));
    CHECK(l.diode == doctest::Approx(17.211740206530536).epsilon(1e-12));

    for (double c : {-1.0, 0.0, 0.5, 1.0}) {
        l = conduction_losses(conditions(400, 0, c), mod);
        CHECK(l.igbt == doctest::Approx(94.802257834933).epsilon(1e-12));
        CHECK(l.diode == doctest::Approx(88.47887837492023).epsilon(1e-12));
    }
    CHECK_THROWS_AS(conduction_losses(conditions(400, 1.01, 1), mod), Error);
}

TEST_CASE("conduction oracle agreement") {
    const double ms[] = {0, 0.25, 0.5, 0.75, 1};
    const double phis[] = {0, pi / 6, pi / 4, pi / 2, 2 * pi / 3, pi};
    const double is[] = {1, 50, 400};
    for (const auto& mod : default_modules()) {
        for (double m : ms) {
            for (double phi : phis) {
                for (double i : is) {
                    const auto c = conditions(i, m, std::cos(phi));
                    const auto a = conduction_losses(c, mod);
                    const auto o = conduction_loss_oracle(c, mod);
                    CHECK(std::abs(a.igbt - o.igbt) <= 1e-6 * std::max(a.igbt, 1e-12));
                    CHECK(std::abs(a.diode - o.diode) <= 1e-6 * std::max(a.diode, 1e-12));
                }
            }
        }
    }
    const auto zero = conduction_loss_oracle(conditions(0, 0.5, 0.3), fs400r07a3e3());
    CHECK(zero.igbt == 0.0);
    CHECK(zero.diode == 0.0);
}

TEST_CASE("symmetric module sum is independent of cos phi") {
    auto mod = fs400r07a3e3();
    mod.diode_threshold = mod.igbt_threshold;
    mod.diode_resistance = mod.igbt_resistance;
    const auto ref = conduction_losses(conditions(250, 0.8, 1), mod);
    for (double c : {-1.0, -0.3, 0.0, 0.4, 0.9}) {
        const auto l = conduction_losses(conditions(250, 0.8, c), mod);
        CHECK(l.igbt + l.diode == doctest::Approx(ref.igbt + ref.diode).epsilon(1e-13));
    }
}

TEST_CASE("switching losses") {
    const auto mod = fs400r07a3e3();
    auto s = switching_losses(conditions(0, 1, 1), mod);
    CHECK(s.igbt == 0.0);
    CHECK(s.diode == 0.0);
    s = switching_losses(conditions(400, 1, 1, 300, 10e3), mod);
    CHECK(s.igbt == doctest::Approx(33.12014365742343).epsilon(1e-12));
    CHECK(s.diode == doctest::Approx(16.39614223732706).epsilon(1e-12));
    const auto half = switching_losses(conditions(400, 1, 1, 150, 10e3), mod);
    CHECK(half.igbt == doctest::Approx(s.igbt / 2).epsilon(1e-15));
    CHECK(half.diode == doctest::Approx(s.diode / 2).epsilon(1e-15));
}

TEST_CASE("inverter aggregate") {
    const auto mod = fs400r07a3e3();
    CHECK(inverter_loss(conditions(0, 0.5, 1), mod).total() == 0.0);
    const auto l = inverter_loss(conditions(400, 1, 1), mod);
    CHECK(l.total() == doctest::Approx(1432.6718634906729).epsilon(1e-12));
    CHECK(l.inductor_copper == 0.0);

    const auto twice = inverter_loss(conditions(400, 1, 1, 300, 20e3), mod);
    CHECK(twice.igbt_conduction == l.igbt_conduction);
    CHECK(twice.diode_conduction == l.diode_conduction);
    CHECK(twice.igbt_switching == doctest::Approx(2 * l.igbt_switching));
    CHECK(twice.diode_recovery == doctest::Approx(2 * l.diode_recovery));
}

TEST_CASE("boost converter") {
    const BoostParams bp;
    CHECK(boost_converter_loss(0, 387.8, 800, bp).total() == 0.0);

    const auto pass = boost_converter_loss(100, 800, 800, bp);
    CHECK(pass.igbt_conduction == 0.0);
    CHECK(pass.diode_conduction > 0.0);

    const auto l = boost_converter_loss(128.9, 387.8, 800, bp);
    CHECK(l.igbt_conduction == doctest::Approx(75.60380922795).epsilon(1e-12));
    CHECK(l.diode_conduction == doctest::Approx(60.216283270325).epsilon(1e-12));
    CHECK(l.igbt_switching == doctest::Approx(244.4249540740741).epsilon(1e-12));
    CHECK(l.diode_recovery == doctest::Approx(182.83557925925925).epsilon(1e-12));
    CHECK(l.inductor_copper == doctest::Approx(19.938252).epsilon(1e-12));
    CHECK(l.total() == doctest::Approx(583.0188778316084).epsilon(1e-12));

    CHECK_THROWS_AS(boost_converter_loss(10, 900, 800, bp), Error);
}

TEST_CASE("loss breakdown additivity") {
    LossBreakdown b;
    const auto mod = fs400r07a3e3();
    b.set(Converter::fc_inverter, inverter_loss(conditions(300, 0.7, 0.9), mod));
    b.set(Converter::battery_inverter, inverter_loss(conditions(300, 0.4, -0.2, 400), mod));
    b.motor_copper = 321.0;
    const double parts = b.igbt_conduction() + b.diode_conduction() + b.igbt_switching() + b.diode_recovery() +
                         b.inductor_copper() + b.motor_copper;
    CHECK(std::abs(b.total() - parts) <= 1e-9 * b.total());
    CHECK(b.has(Converter::fc_inverter));
    CHECK_FALSE(b.has(Converter::boost));
}

TEST_CASE("module table file") {
    std::istringstream in(
        "# comment\n"
        "label,V_ces,V_nom,I_nom,V_ce0,V_D0,R_on,R_D,E_on,E_off,E_rec\n"
        "X1,1200,600,450,0.78,0.8,0.00278,0.00127,0.013689,0.01831,0.023936\n");
    const auto rows = parse_modules(in);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].label == "X1");
    CHECK(rows[0].recovery_energy == 0.023936);

    std::istringstream bad("label,V_ces\nX,1\n");
    try {
        parse_modules(bad);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse_error);
    }
}

}
