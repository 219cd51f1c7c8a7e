// Acceptance checks. One PASS/FAIL line per criterion; exit status is
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fcev/drive_cycle.hpp"
#include "fcev/error.hpp"
#include "fcev/kernels.hpp"
#include "fcev/losses.hpp"
#include "fcev/power_sharing.hpp"
#include "fcev/report.hpp"
#include "fcev/switched_sim.hpp"

using namespace fcev;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("threw ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && dt > budget_s) {
        o.passed = false;
        o.detail += fmt("; runtime over %.0f s budget", budget_s);
    }
    if (!o.passed) ++failures;
    std::printf("%s criterion %d: %s (%s) [%.3f s]\n", o.passed ? "PASS" : "FAIL", id, title, o.detail.c_str(), dt);
    std::fflush(stdout);
}

DriveCycle shipped(const char* name) { return load_cycle(std::string(FCEV_DATA_DIR) + "/cycles/" + name + ".csv"); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Outcome conduction_oracle() {
    constexpr double pi = std::numbers::pi;
    const double ms[] = {0, 0.25, 0.5, 0.75, 1};
    const double phis[] = {0, pi / 6, pi / 4, pi / 2, 2 * pi / 3, pi};
    const double is[] = {1, 50, 400};
    double worst = 0.0;
    int points = 0;
    for (const auto& mod : default_modules()) {
        for (double m : ms) {
            for (double phi : phis) {
                for (double i : is) {
                    const InverterConditions c{i, m, std::cos(phi), mod.nominal_voltage, 10e3};
                    const auto a = conduction_losses(c, mod);
                    const auto o = conduction_loss_oracle(c, mod);
                    if (a.igbt > 0) worst = std::max(worst, rel(a.igbt, o.igbt));
                    if (a.diode > 0) worst = std::max(worst, rel(a.diode, o.diode));
                    ++points;
                }
            }
        }
    }
    const int modules = static_cast<int>(default_modules().size());
    return {worst < 1e-6, fmt("%d points x %d modules, max relative error %.2e", points / modules, modules, worst)};
}

Outcome switching_linearity() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto modules = default_modules();
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const auto& mod = modules[k % modules.size()];
        const InverterConditions base{1 + 500 * u(rng), u(rng), 2 * u(rng) - 1, 100 + 600 * u(rng), 2e3 + 3e4 * u(rng)};
        const auto l0 = switching_losses(base, mod);
        const double s = 0.2 + 3 * u(rng);
        for (int axis = 0; axis < 3; ++axis) {
            auto c = base;
            if (axis == 0) c.switching_frequency *= s;
            if (axis == 1) c.dc_voltage *= s;
            if (axis == 2) c.current_peak *= s;
            const auto l1 = switching_losses(c, mod);
            worst = std::max({worst, rel(l1.igbt, s * l0.igbt), rel(l1.diode, s * l0.diode)});
        }
    }
    return {worst < 1e-14, fmt("20 points x 3 axes, max relative deviation %.2e", worst)};
}

Outcome table4() {
    struct Target {
        const char* cycle;
        TopologyKind kind;
        double target;
    };
    const Target targets[] = {{"hwfet", TopologyKind::dual_inverter, 94.62},
                              {"hwfet", TopologyKind::conventional, 89.35},
                              {"udds", TopologyKind::dual_inverter, 83.44},
                              {"udds", TopologyKind::conventional, 73.31}};
    bool ok = true;
    std::string detail;
    double eff[4];
    double slowest = 0.0;
    for (int k = 0; k < 4; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = run_cycle(shipped(targets[k].cycle), default_config(targets[k].kind));
        slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        eff[k] = 100 * r.efficiency;
        const bool in_band = std::abs(eff[k] - targets[k].target) <= 2.5;
        ok = ok && in_band && r.fc_report.passed();
        detail += fmt("%s %s %.2f%% vs %.2f%%%s; ", targets[k].cycle, to_string(targets[k].kind), eff[k],
                      targets[k].target, in_band ? "" : " out of band");
    }
    const bool order = eff[0] > eff[1] && eff[2] > eff[3];
    detail += order ? "dual > conventional on both cycles" : "ordering violated";
    detail += fmt("; slowest run %.3f s", slowest);
    return {ok && order && slowest < 10.0, detail};
}

Outcome loss_ratio_check() {
    const auto dual = default_dual_config();
    const auto conv = default_conventional_config();
    auto ratio = [&](double we) {
        return loss_ratio(evaluate_point(conv, 50e3, we, 50e3), evaluate_point(dual, 50e3, we, 50e3));
    };
    const double nominal = ratio(1500);
    bool ok = nominal >= 1.30 && nominal <= 1.60;
    std::string detail = fmt("ratio %.4f at 1500 rad/s; sweep", nominal);
    for (double f : {0.7, 0.85, 1.15, 1.3}) {
        const double r = ratio(1500 * f);
        ok = ok && r > 1.0;
        detail += fmt(" %.0f:%.4f", 1500 * f, r);
    }
    return {ok, detail};
}

struct SimCase {
    PointResult point;
    SimWaveforms w;
};

SimCase simulate(TopologyKind kind, double dt_scale = 1.0) {
    const auto cfg = default_config(kind);
    SimCase c{evaluate_point(cfg, 50e3, 1500, 50e3), {}};
    auto sim = make_sim_config(cfg, c.point);
    sim.dt *= dt_scale;
    c.w = run_switched(sim);
    return c;
}

Outcome switched_vs_analytical() {
    bool ok = true;
    std::string detail;
    for (auto kind : {TopologyKind::dual_inverter, TopologyKind::conventional}) {
        const auto c = simulate(kind);
        const auto rep = compare_to_analytical(c.w, c.point.losses);
        ok = ok && rep.passed();
        detail += std::string(to_string(kind)) + ":";
        for (const auto& row : rep.rows) {
            if (row.category == "conduction" || row.category == "switching" || row.category == "total" ||
                !row.passed()) {
                detail += fmt(" %s %+.1f%%", row.category.c_str(), 100 * row.deviation);
            }
        }
        detail += "; ";
    }
    detail.resize(detail.size() - 2);
    return {ok, detail};
}

Outcome voltage_levels() {
    const auto conv = simulate(TopologyKind::conventional);
    const auto dual = simulate(TopologyKind::dual_inverter);
    const auto& d = default_dual_config();
    const double vfc = dual.point.fc_voltage;
    const int nc = count_voltage_levels(conv.w, 5.0);
    const int nd = count_voltage_levels(dual.w, 5.0);
    const bool unequal = std::abs(vfc - d.battery_voltage) > 1.0;
    return {nc == 5 && nd >= 7 && unequal,
            fmt("conventional %d, dual %d (buses %.1f V / %.1f V)", nc, nd, vfc, d.battery_voltage)};
}

Outcome sharing_constraints() {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> jump(0, 20e3);
    std::uniform_real_distribution<double> u(0, 1);
    const SharingPolicy policy;
    int traces_ok = 0;
    for (int t = 0; t < 100; ++t) {
        std::vector<double> demand(800);
        double x = 0.0;
        for (auto& v : demand) {
            x = std::clamp(x + jump(rng), -90e3, 110e3);
            v = u(rng) < 0.05 ? -80e3 : x;
        }
        const auto ref = fc_power_reference(demand, policy, 1.0);
        const auto rep = validate_fc_constraints(ref, policy, 1.0);
        bool ok = rep.passed();
        for (std::size_t k = 1; k < ref.size(); ++k) {
            ok = ok && ref[k] >= policy.min_power && ref[k] >= 0.0 &&
                 std::abs(ref[k] - ref[k - 1]) <= policy.slew_limit * (1 + 1e-12);
        }
        traces_ok += ok;
    }

    // Split reconstruction and realised FC power over random feasible points.
    const auto dual = default_dual_config();
    double recon = 0.0, realised = 0.0;
    int points = 0;
    for (int k = 0; k < 400 && points < 200; ++k) {
        const double we = 300 + 2700 * u(rng);
        const double shaft = 5e3 + 60e3 * u(rng);
        const double pfc = policy.min_power + (policy.max_power - policy.min_power) * u(rng);
        PointResult p;
        try {
            p = evaluate_point(dual, shaft, we, pfc);
        } catch (const Error&) {
            continue;
        }
        ++points;
        const Dq sum = p.split->fc_voltage + p.split->battery_voltage;
        recon = std::max(recon, (sum - p.op.voltage).magnitude() / p.op.voltage.magnitude());
        realised = std::max(realised, rel(p.fc_power, pfc));
    }
    const bool ok = traces_ok == 100 && points >= 100 && recon < 1e-12 && realised < 1e-9;
    return {ok, fmt("%d/100 traces within limits; %d points, reconstruction %.1e, FC power %.1e", traces_ok, points,
                    recon, realised)};
}

Outcome vehicle_conservation() {
    const VehicleParams vp;
    const EnvironmentConstants env;
    const auto& kt = kernels::active();
    double worst = 0.0;
    std::string detail;
    for (const char* name : {"udds", "hwfet"}) {
        const auto c = shipped(name);
        const auto a = central_difference(c.time, c.speed);
        const auto s = road_load_series(c.speed, a, vp, env);
        std::vector<double> traction(c.size());
        for (std::size_t k = 0; k < traction.size(); ++k) traction[k] = std::max(s.shaft[k], 0.0);
        const double net = kt.trapezoid(c.time.data(), s.acceleration.data(), c.size());
        const double gross = kt.trapezoid(c.time.data(), traction.data(), c.size());
        const double r = std::abs(net) / gross;
        worst = std::max(worst, r);
        detail += fmt("%s %.2e; ", name, r);
    }
    detail += kt.name;
    return {worst < 1e-3, detail};
}

Outcome step_convergence() {
    bool ok = true;
    std::string detail;
    for (auto kind : {TopologyKind::dual_inverter, TopologyKind::conventional}) {
        const double a = simulate(kind).w.losses.total();
        const double b = simulate(kind, 0.5).w.losses.total();
        const double r = rel(b, a);
        ok = ok && r < 0.02;
        detail += fmt("%s %.2e; ", to_string(kind), r);
    }
    detail.resize(detail.size() - 2);
    return {ok, detail};
}

Outcome determinism() {
    auto artefacts = [] {
        std::string all;
        std::vector<CycleResult> runs;
        for (const char* name : {"hwfet", "udds"}) {
            for (auto kind : {TopologyKind::dual_inverter, TopologyKind::conventional}) {
                runs.push_back(run_cycle(shipped(name), default_config(kind)));
                std::ostringstream csv;
                write_cycle_csv(csv, runs.back());
                all += csv.str() + cycle_summary_json(runs.back());
            }
        }
        all += cycle_comparison_json(runs);
        for (auto kind : {TopologyKind::dual_inverter, TopologyKind::conventional}) {
            const auto cfg = default_config(kind);
            SimulationSummary s;
            s.analytical = analyze_point(cfg, 50e3, 1500);
            const auto w = run_switched(make_sim_config(cfg, s.analytical.result));
            s.levels = count_voltage_levels(w, 5.0);
            s.comparison = compare_to_analytical(w, s.analytical.result.losses);
            std::ostringstream csv;
            write_waveform_csv(csv, w, 1);
            all += csv.str() + simulation_json(s, w);
        }
        return all;
    };
    const auto a = artefacts();
    const auto b = artefacts();
    return {a == b, fmt("%zu bytes compared", a.size())};
}

}  // namespace

int main() {
    std::printf("kernels: %s\n", kernels::active().name);
    run(1, "closed-form conduction vs quadrature oracle", 1, conduction_oracle);
    run(2, "switching loss linearity", 1, switching_linearity);
    run(3, "cycle efficiencies vs published values", 40, table4);
    run(4, "50 kW loss ratio conventional/dual", 1, loss_ratio_check);
    run(5, "switched simulation vs analytical losses", 120, switched_vs_analytical);
    run(6, "phase voltage level counts", 120, voltage_levels);
    run(7, "power sharing constraints", 5, sharing_constraints);
    run(8, "kinetic energy conservation over cycles", 1, vehicle_conservation);
    run(9, "switched simulation step-size convergence", 0, step_convergence);
    run(10, "determinism of CSV/JSON outputs", 0, determinism);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
