#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fcev/error.hpp"
#include "fcev/switched_sim.hpp"

using namespace fcev;

namespace {

struct Case {
    TopologyConfig cfg;
    PointResult point;
    SimConfig sim;
};

Case make_case(TopologyKind kind) {
    Case c{default_config(kind), {}, {}};
    c.point = evaluate_point(c.cfg, 50e3, 1500, 50e3);
    c.sim = make_sim_config(c.cfg, c.point);
    return c;
}

}  // namespace

TEST_SUITE("switched_sim") {

TEST_CASE("energy conservation and fundamentals") {
    for (auto kind : {TopologyKind::dual_inverter, TopologyKind::conventional}) {
        const auto c = make_case(kind);
        const auto w = run_switched(c.sim);
        const double scale = std::abs(w.dc_energy);
        CHECK(std::abs(w.dc_energy - w.terminal_energy - w.bridge_conduction_energy) <= 1e-9 * scale);
        const double err = (w.current_fundamental - w.commanded_current).magnitude() / w.commanded_current.magnitude();
        CHECK(err < 0.05);
        if (kind == TopologyKind::dual_inverter) {
            const Dq sum = w.bridge_fundamental[0] + w.bridge_fundamental[1];
            CHECK((sum - w.commanded_voltage).magnitude() < 0.03 * w.commanded_voltage.magnitude());
        }
        CHECK(w.conducting.size() == w.size());
    }
}

TEST_CASE("event counts track the carrier") {
    const auto c = make_case(TopologyKind::conventional);
    const auto w = run_switched(c.sim);
    const double periods = w.measured_duration * w.fundamental_frequency;
    const double per_period = c.sim.switching_frequency / w.fundamental_frequency;
    std::size_t upper_igbt = 0;
    for (const auto& d : w.devices) {
        if (upper_igbt == 0 && d.name.ends_with(".a.T+")) upper_igbt = d.events;
    }
    // One turn-on and one turn-off per carrier period while conducting half a fundamental.
    CHECK(upper_igbt == doctest::Approx(per_period * periods).epsilon(0.15));
}

TEST_CASE("zero drive decays the current") {
    auto c = make_case(TopologyKind::conventional);
    c.sim.current = {0, 0};
    c.sim.voltage = {0, 0};
    c.sim.motor.flux_linkage = 1e-9;
    c.sim.initial_current = Dq{0, 100};
    c.sim.boost.reset();
    c.sim.fc_current = 0.0;
    c.sim.duration = 0.08;
    c.sim.settle_time = 0.0;
    const auto w = run_switched(c.sim);
    const double first = std::abs(w.phase_current[1].front()) + std::abs(w.phase_current[2].front());
    const double last = std::abs(w.phase_current[1].back()) + std::abs(w.phase_current[2].back());
    CHECK(last < 0.05 * first);
}

TEST_CASE("time step guard") {
    auto c = make_case(TopologyKind::dual_inverter);
    c.sim.dt = 2.0 / (100.0 * c.sim.switching_frequency);
    try {
        run_switched(c.sim);
        FAIL("expected UnstableIntegration");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unstable_integration);
    }
}

TEST_CASE("level counting") {
    CHECK(count_levels({0, 0, 0, 1, 1, 1}, 0.5, 0.0) == 2);
    CHECK(count_levels({0, 0.2, 0.4, 0.6, 10, 10}, 0.5, 0.0) == 2);
    CHECK(count_levels({0, 0, 0, 0, 0, 0, 0, 0, 0, 50}, 1.0, 0.2) == 1);

    const auto conv = run_switched(make_case(TopologyKind::conventional).sim);
    const auto dual = run_switched(make_case(TopologyKind::dual_inverter).sim);
    const int nc = count_voltage_levels(conv, 5.0);
    const int nd = count_voltage_levels(dual, 5.0);
    MESSAGE("levels conventional " << nc << ", dual " << nd);
    CHECK(nc == 5);
    CHECK(nd > nc);
}

TEST_CASE("comparison report") {
    const auto c = make_case(TopologyKind::conventional);
    const auto w = run_switched(c.sim);
    const auto r = compare_to_analytical(w, c.point.losses);
    REQUIRE(r.find("total"));
    CHECK(r.find("total")->threshold == 0.15);
    CHECK(r.find("conduction")->threshold == 0.10);
    CHECK(r.find("switching")->threshold == 0.20);
    CHECK(r.passed());
}

TEST_CASE("waveform csv") {
    const auto w = run_switched(make_case(TopologyKind::conventional).sim);
    std::ostringstream out;
    write_waveform_csv(out, w, 10);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "time_s,i_a_A,i_b_A,i_c_A,v_a_V,v_b_V,v_c_V,i_boost_A,conducting");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == (w.size() + 9) / 10);
}

}
