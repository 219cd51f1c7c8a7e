#include <doctest.h>

#include <sstream>

#include "fcev/config.hpp"
#include "fcev/error.hpp"

using namespace fcev;

namespace {

Errc config_code(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_config(in);
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::infeasible;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults") {
    std::istringstream in("");
    const auto c = parse_config(in);
    CHECK(c.dual.battery_voltage == 400.0);
    CHECK(c.conventional.battery_voltage == 800.0);
    CHECK(c.dual.policy.min_power == 3.5e3);
    CHECK(c.validation_speed == 1500.0);
}

TEST_CASE("overrides reach both topologies") {
    std::istringstream in(
        "# test\n"
        "[motor]\np = 4\n"
        "[vehicle]\nM_car = 1500\n"
        "[sharing]\ntau = 10\nP_min = 2000\n"
        "[dual]\nV_bat = 350\nf_sw = 8000\n"
        "[conventional]\nV_bus = 700\n"
        "[analysis]\nspeed = 1200\n");
    const auto c = parse_config(in);
    CHECK(c.dual.motor.pole_pairs == 4);
    CHECK(c.conventional.motor.pole_pairs == 4);
    CHECK(c.conventional.vehicle.mass == 1500);
    CHECK(c.dual.policy.time_constant == 10);
    CHECK(c.conventional.policy.min_power == 2000);
    CHECK(c.dual.battery_voltage == 350);
    CHECK(c.dual.switching_frequency == 8000);
    CHECK(c.conventional.battery_voltage == 700);
    CHECK(c.validation_speed == 1200);
}

TEST_CASE("errors") {
    CHECK(config_code("[motor]\nbogus = 1\n") == Errc::config_error);
    CHECK(config_code("[nowhere]\np = 1\n") == Errc::config_error);
    CHECK(config_code("[motor]\np = abc\n") == Errc::config_error);
    CHECK(config_code("[dual]\nmodule = NOPE\n") == Errc::config_error);
    CHECK(config_code("[sharing]\nP_min = 90000\n") == Errc::config_error);
    try {
        load_config("/nonexistent/fcev.ini");
        FAIL("expected ConfigError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::config_error);
    }
}

TEST_CASE("shipped default config") {
    const auto c = load_config(std::string(FCEV_SOURCE_DIR) + "/config/default.ini");
    CHECK(c.dual.policy.max_power == 70e3);
    CHECK(c.modules.size() >= 3);
}

}
