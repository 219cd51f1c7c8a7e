#include "fcev/drive_cycle.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <string>

#include "fcev/error.hpp"
#include "fcev/kernels.hpp"
#include "text.hpp"

namespace fcev {

namespace {

constexpr double kMphToMps = 0.44704;

std::string at_line(std::size_t lineno) { return "line " + std::to_string(lineno) + ": "; }

}  // namespace

void DriveCycle::validate() const {
    if (time.size() != speed.size()) throw Error(Errc::parse_error, "cycle time and speed lengths differ");
    if (time.size() < 2) throw Error(Errc::parse_error, "cycle needs at least two samples");
    for (std::size_t k = 0; k < time.size(); ++k) {
        if (!std::isfinite(time[k]) || !std::isfinite(speed[k])) {
            throw Error(Errc::parse_error, "cycle sample " + std::to_string(k) + " is not finite", k);
        }
        if (speed[k] < 0.0) throw Error(Errc::domain_error, "negative speed in cycle", k);
        if (k > 0 && !(time[k] > time[k - 1])) {
            throw Error(Errc::non_monotonic_time,
                        "time does not increase at sample " + std::to_string(k), k);
        }
    }
}

DriveCycle parse_cycle(std::istream& in, std::string name) {
    DriveCycle c;
    c.name = std::move(name);
    double scale = 1.0;
    bool first = true;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::is_blank_or_comment(line)) continue;
        const auto cols = text::split(line);
        if (cols.size() != 2) throw Error(Errc::parse_error, at_line(lineno) + "expected two columns");
        if (first) {
            first = false;
            if (!text::to_double(cols[0])) {
                if (cols[0] != "time_s") throw Error(Errc::parse_error, at_line(lineno) + "expected time_s column");
                if (cols[1] == "speed_mps") {
                    scale = 1.0;
                } else if (cols[1] == "speed_mph") {
                    scale = kMphToMps;
                } else {
                    throw Error(Errc::parse_error, at_line(lineno) + "speed column must be speed_mps or speed_mph");
                }
                continue;
            }
        }
        const auto t = text::to_double(cols[0]);
        const auto v = text::to_double(cols[1]);
        if (!t || !v) throw Error(Errc::parse_error, at_line(lineno) + "expected two numbers");
        if (!c.time.empty() && !(*t > c.time.back())) {
            throw Error(Errc::non_monotonic_time, at_line(lineno) + "time does not increase", c.time.size());
        }
        if (*v < 0.0) throw Error(Errc::parse_error, at_line(lineno) + "negative speed");
        c.time.push_back(*t);
        c.speed.push_back(*v * scale);
    }
    c.validate();
    return c;
}

DriveCycle load_cycle(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::config_error, "cannot open cycle file '" + path + "'");
    std::string name = path;
    if (const auto slash = name.find_last_of('/'); slash != std::string::npos) name.erase(0, slash + 1);
    if (const auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0) name.erase(dot);
    return parse_cycle(in, name);
}

CycleEnergies integrate_energies(std::span<const double> time, std::span<const double> output,
                                 std::span<const double> loss_inverter,
                                 std::span<const double> loss_motor) {
    const std::size_t n = time.size();
    if (output.size() != n || loss_inverter.size() != n || loss_motor.size() != n) {
        throw Error(Errc::domain_error, "energy series lengths differ");
    }
    const auto& k = kernels::active();
    CycleEnergies e;
    e.output = k.trapezoid(time.data(), output.data(), n);
    e.loss_inverter = k.trapezoid(time.data(), loss_inverter.data(), n);
    e.loss_motor = k.trapezoid(time.data(), loss_motor.data(), n);
    return e;
}

double energy_efficiency(const CycleEnergies& e) {
    const double denom = e.output + e.loss_inverter + e.loss_motor;
    if (e.output == 0.0 || denom == 0.0) throw Error(Errc::zero_energy, "no output energy to rate");
    return e.output / denom;
}

double energy_efficiency(const CycleResult& result) { return energy_efficiency(result.energies); }

CycleResult run_cycle(const DriveCycle& cycle, const TopologyConfig& cfg) {
    cycle.validate();
    cfg.validate();
    const std::size_t n = cycle.size();
    const auto accel = central_difference(cycle.time, cycle.speed);
    const auto load = road_load_series(cycle.speed, accel, cfg.vehicle, cfg.environment);

    CycleResult r;
    r.cycle_name = cycle.name;
    r.kind = cfg.kind;
    r.samples.resize(n);

    std::vector<double> reference(n), output(n), loss_inv(n), loss_motor(n);
    FcReferenceFilter filter(cfg.policy);
    for (std::size_t k = 0; k < n; ++k) {
        auto& s = r.samples[k];
        s.time = cycle.time[k];
        s.speed = cycle.speed[k];
        s.shaft_power = load.shaft[k];
        const double dt = k == 0 ? 0.0 : cycle.time[k] - cycle.time[k - 1];
        s.fc_reference = filter.step(s.shaft_power, dt);
        reference[k] = s.fc_reference;

        const double we = motor_shaft_speed(s.speed, cfg.vehicle, cfg.motor.pole_pairs).electrical;
        PointResult p;
        try {
            p = evaluate_point(cfg, s.shaft_power, we, s.fc_reference, true);
        } catch (const Error& e) {
            throw Error(e.code(), "sample " + std::to_string(k) + " (t = " + text::format_double(s.time) +
                                      " s): " + e.what(), k);
        }
        s.dc_power = p.dc_power;
        s.fc_power = p.fc_power;
        s.battery_power = p.battery_power;
        s.d_current = p.op.current.d;
        s.q_current = p.op.current.q;
        s.fc_adjusted = p.fc_adjusted;
        s.losses = p.losses;
        s.output_power = s.shaft_power >= 0.0 ? s.shaft_power : s.dc_power;
        if (p.fc_adjusted) ++r.fc_adjusted_samples;

        output[k] = s.output_power;
        loss_inv[k] = s.losses.converters_total();
        loss_motor[k] = s.losses.motor_copper;
    }

    r.energies = integrate_energies(cycle.time, output, loss_inv, loss_motor);
    if (r.energies.output == 0.0) {
        r.zero_energy = true;
        r.efficiency = 1.0;
    } else {
        r.efficiency = energy_efficiency(r.energies);
    }
    const double dt_nominal = cycle.duration() / static_cast<double>(n - 1);
    r.fc_report = validate_fc_constraints(reference, cfg.policy, dt_nominal);
    return r;
}

}  // namespace fcev
