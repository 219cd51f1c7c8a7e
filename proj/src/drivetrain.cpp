#include "fcev/drivetrain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fcev/error.hpp"

namespace fcev {

namespace {

constexpr int kFixedPointIterations = 30;
constexpr double kFixedPointTolerance = 1e-13;
constexpr double kSlack = 1e-9;  // V

bool split_realisable(const OperatingPoint& op, double ac_power, double fc_voltage, double bat_voltage,
                      double m_max) {
    const double bat_cap = m_max * bat_voltage / 2.0;
    const double i2 = op.current.dot(op.current);
    if (ac_power == 0.0) return op.voltage.magnitude() <= bat_cap + kSlack;
    if (i2 == 0.0) return false;
    const Dq fc = (ac_power / (1.5 * i2)) * op.current;
    return fc.magnitude() <= m_max * fc_voltage / 2.0 + kSlack &&
           (op.voltage - fc).magnitude() <= bat_cap + kSlack;
}

struct DualSolve {
    OperatingPoint op;
    PowerSplit split;
    bool adjusted = false;
};

// Realises `ac_power` at the FC inverter terminals, or the nearest feasible
// value when `allow_adjust` is set.
DualSolve solve_dual(const TopologyConfig& cfg, double shaft_power, double we, double ac_power,
                     double fc_voltage, bool allow_adjust) {
    const double vbat = cfg.battery_voltage;
    const double m_max = cfg.max_modulation;
    const double ceiling = cfg.current_ceiling();
    DualSolve out;

    if (ac_power >= 0.0) {
        auto ok = [&](const OperatingPoint& op) {
            return split_realisable(op, ac_power, fc_voltage, vbat, m_max);
        };
        if (solve_min_d_current(shaft_power, we, cfg.motor, ceiling, ok, out.op)) {
            out.split = split_voltage(out.op, ac_power, fc_voltage, vbat, m_max);
            return out;
        }
    }
    const double v_lim = m_max * (fc_voltage + vbat) / 2.0;
    if (!allow_adjust) {
        if (ac_power < 0.0) {
            throw Error(Errc::domain_error, "fuel-cell power does not cover its inverter losses");
        }
        // Surface the limit that blocks the request at the voltage-limited point.
        const OperatingPoint op = solve_operating_point(shaft_power, we, cfg.motor, v_lim, ceiling);
        split_voltage(op, ac_power, fc_voltage, vbat, m_max);
        throw Error(Errc::infeasible, "no d-axis current realises the requested fuel-cell power");
    }

    out.adjusted = true;
    out.op = solve_operating_point(shaft_power, we, cfg.motor, v_lim, ceiling);
    auto window = fc_power_window(out.op, fc_voltage, vbat, m_max);
    if (!window) {
        auto has_window = [&](const OperatingPoint& op) {
            return fc_power_window(op, fc_voltage, vbat, m_max).has_value();
        };
        if (!solve_min_d_current(shaft_power, we, cfg.motor, ceiling, has_window, out.op)) {
            throw Error(Errc::infeasible, "no voltage split is realisable at this operating point");
        }
        window = fc_power_window(out.op, fc_voltage, vbat, m_max);
    }
    const double p = std::clamp(ac_power, window->low, window->high);
    out.split = split_voltage(out.op, p, fc_voltage, vbat, m_max);
    return out;
}

PointResult evaluate_dual(const TopologyConfig& cfg, double shaft_power, double we, double fc_power,
                          bool allow_adjust) {
    const double f_sw = cfg.switching_frequency;
    const double vbat = cfg.battery_voltage;
    const double r_s = cfg.motor.resistance;

    // The stack delivers `fc_power`; its inverter passes that minus its own
    // loss to the winding. The loss depends on the split, so iterate. An idle
    // stack (zero request) leaves its bridge in the zero state and the bridge
    // loss is drawn from the winding side.
    const bool idle_stack = fc_power == 0.0 && !allow_adjust;
    double stack = fc_power;
    double ac = fc_power;
    DualSolve sol;
    ConverterLoss fc_loss;
    ConverterLoss bat_loss;
    double vfc = 0.0;
    for (int it = 0; it < kFixedPointIterations; ++it) {
        vfc = cfg.fuel_cell.voltage_at_power(stack);
        sol = solve_dual(cfg, shaft_power, we, ac, vfc, allow_adjust);
        const Dq& i = sol.op.current;
        fc_loss = inverter_loss(inverter_conditions(sol.split.fc_voltage, i, vfc, f_sw), cfg.inverter_module);
        bat_loss = inverter_loss(inverter_conditions(sol.split.battery_voltage, i, vbat, f_sw),
                                 cfg.inverter_module);
        if (idle_stack) break;
        const double next_ac = fc_power - fc_loss.total();
        const double next_stack = sol.adjusted ? sol.split.fc_power + fc_loss.total() : fc_power;
        const double tol = kFixedPointTolerance * std::max(fc_power, 1.0);
        const bool settled = std::abs(next_ac - ac) <= tol && std::abs(next_stack - stack) <= tol;
        ac = next_ac;
        stack = std::min(std::max(next_stack, 0.0), cfg.fuel_cell.max_power());
        if (settled) break;
    }

    PointResult r;
    r.op = sol.op;
    r.split = sol.split;
    r.fc_adjusted = sol.adjusted;
    r.losses.set(Converter::fc_inverter, fc_loss);
    r.losses.set(Converter::battery_inverter, bat_loss);
    r.losses.motor_copper = motor_copper_loss_from_peak(sol.op.current_peak(), r_s);
    r.shaft_power = shaft_power;
    r.dc_power = shaft_power + r.losses.total();
    r.fc_power = idle_stack ? 0.0 : sol.split.fc_power + fc_loss.total();
    r.battery_power = r.dc_power - r.fc_power;
    r.fc_voltage = vfc;
    r.fc_current = cfg.fuel_cell.current_at_power(std::min(std::max(r.fc_power, 0.0), cfg.fuel_cell.max_power()));
    return r;
}

PointResult evaluate_conventional(const TopologyConfig& cfg, double shaft_power, double we, double fc_power) {
    const double vbus = cfg.battery_voltage;
    PointResult r;
    r.op = solve_operating_point(shaft_power, we, cfg.motor, cfg.max_modulation * vbus / 2.0,
                                 cfg.current_ceiling());
    r.losses.set(Converter::traction_inverter,
                 inverter_loss(inverter_conditions(r.op.voltage, r.op.current, vbus, cfg.switching_frequency),
                               cfg.inverter_module));
    r.fc_current = cfg.fuel_cell.current_at_power(fc_power);
    r.fc_voltage = cfg.fuel_cell.voltage_at_current(r.fc_current);
    r.losses.set(Converter::boost, boost_converter_loss(r.fc_current, r.fc_voltage, vbus, *cfg.boost));
    r.losses.motor_copper = motor_copper_loss_from_peak(r.op.current_peak(), cfg.motor.resistance);
    r.shaft_power = shaft_power;
    r.dc_power = shaft_power + r.losses.total();
    r.fc_power = fc_power;
    r.battery_power = r.dc_power - r.fc_power;
    return r;
}

}  // namespace

const char* to_string(TopologyKind kind) noexcept {
    return kind == TopologyKind::dual_inverter ? "dual" : "conventional";
}

TopologyKind parse_topology(std::string_view text) {
    if (text == "dual" || text == "dual_inverter") return TopologyKind::dual_inverter;
    if (text == "conventional" || text == "boost" || text == "boosted") return TopologyKind::conventional;
    throw Error(Errc::config_error, "unknown topology '" + std::string(text) + "'");
}

void TopologyConfig::validate() const {
    if (!(battery_voltage > 0.0)) throw Error(Errc::config_error, "battery voltage must be positive");
    if (!(switching_frequency > 0.0)) throw Error(Errc::config_error, "switching frequency must be positive");
    if (!(max_modulation > 0.0) || max_modulation > 1.0) {
        throw Error(Errc::config_error, "maximum modulation index must be in (0, 1]");
    }
    if (!(current_ceiling_factor > 0.0)) throw Error(Errc::config_error, "current ceiling factor must be positive");
    inverter_module.validate();
    if (kind == TopologyKind::conventional) {
        if (!boost) throw Error(Errc::config_error, "conventional topology needs boost converter parameters");
        boost->validate();
    } else if (boost) {
        throw Error(Errc::config_error, "dual-inverter topology has no boost converter");
    }
    policy.validate();
    motor.validate();
    vehicle.validate();
    environment.validate();
}

TopologyConfig default_dual_config() {
    TopologyConfig c;
    c.kind = TopologyKind::dual_inverter;
    c.battery_voltage = 400.0;
    c.switching_frequency = 10e3;
    c.inverter_module = fs400r07a3e3();
    return c;
}

TopologyConfig default_conventional_config() {
    TopologyConfig c;
    c.kind = TopologyKind::conventional;
    c.battery_voltage = 800.0;
    c.switching_frequency = 20e3;
    c.inverter_module = fs400r12a2t4();
    c.boost = BoostParams{};
    return c;
}

TopologyConfig default_config(TopologyKind kind) {
    return kind == TopologyKind::dual_inverter ? default_dual_config() : default_conventional_config();
}

PointResult evaluate_point(const TopologyConfig& cfg, double shaft_power, double we, double fc_power,
                           bool allow_fc_adjust) {
    if (!(we >= 0.0)) throw Error(Errc::domain_error, "electrical speed must be non-negative");
    if (!(fc_power >= 0.0)) throw Error(Errc::domain_error, "fuel-cell power must be non-negative");
    if (cfg.kind == TopologyKind::dual_inverter) {
        return evaluate_dual(cfg, shaft_power, we, fc_power, allow_fc_adjust);
    }
    return evaluate_conventional(cfg, shaft_power, we, fc_power);
}

}  // namespace fcev
