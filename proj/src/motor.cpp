#include "fcev/motor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fcev/error.hpp"

namespace fcev {

namespace {

constexpr int kScanCells = 4000;
constexpr int kBisectionIterations = 200;
constexpr double kVoltageTolerance = 1e-9;

}  // namespace

void MotorParams::validate() const {
    if (pole_pairs < 1) throw Error(Errc::config_error, "motor pole pairs must be >= 1");
    if (!(inductance > 0.0) || !(resistance > 0.0) || !(flux_linkage > 0.0)) {
        throw Error(Errc::config_error, "motor L_s, R_s and psi_m must be positive");
    }
}

Dq steady_state_voltages(Dq i, double we, const MotorParams& p) noexcept {
    return {p.resistance * i.d - we * p.inductance * i.q,
            p.resistance * i.q + we * (p.inductance * i.d + p.flux_linkage)};
}

double electrical_power(Dq v, Dq i) noexcept { return 1.5 * (v.d * i.d + v.q * i.q); }

double torque(Dq i, const MotorParams& p) noexcept {
    return 1.5 * p.pole_pairs * p.flux_linkage * i.q;
}

double motor_copper_loss(double rms_current, double resistance) {
    if (rms_current < 0.0) throw Error(Errc::domain_error, "RMS current must be non-negative");
    return 3.0 * rms_current * rms_current * resistance;
}

double motor_copper_loss_from_peak(double peak_current, double resistance) {
    return motor_copper_loss(std::abs(peak_current) / std::sqrt(2.0), resistance);
}

OperatingPoint make_operating_point(Dq i, double we, const MotorParams& p) noexcept {
    return {we, i, steady_state_voltages(i, we, p)};
}

double torque_current(double shaft_power, double we, const MotorParams& p) {
    if (shaft_power == 0.0) return 0.0;
    if (we <= 0.0) {
        throw Error(Errc::zero_speed_power,
                    "shaft power " + std::to_string(shaft_power) + " W requested at zero speed");
    }
    // P = w_m T = (w_e / p) 1.5 p psi i_q
    return shaft_power / (1.5 * p.flux_linkage * we);
}

double min_voltage_d_current(double we, const MotorParams& p) noexcept {
    const double wl = we * p.inductance;
    return -we * wl * p.flux_linkage / (p.resistance * p.resistance + wl * wl);
}

OperatingPoint solve_operating_point(double shaft_power, double we, const MotorParams& p,
                                     double voltage_limit, double current_ceiling) {
    if (we < 0.0) throw Error(Errc::domain_error, "electrical speed must be non-negative");
    const double iq = torque_current(shaft_power, we, p);
    if (std::abs(iq) > current_ceiling) {
        throw Error(Errc::infeasible, "torque current " + std::to_string(iq) +
                                          " A exceeds the current ceiling");
    }
    const OperatingPoint base = make_operating_point({0.0, iq}, we, p);
    if (base.voltage_peak() <= voltage_limit) return base;

    // |v(i_d)| is a convex quadratic in i_d with its minimum at i_d*; it
    // falls monotonically on [i_d*, 0].
    const double id_ceiling = -std::sqrt(current_ceiling * current_ceiling - iq * iq);
    double lo = std::max(min_voltage_d_current(we, p), id_ceiling);
    double hi = 0.0;
    auto vmag = [&](double id) { return steady_state_voltages({id, iq}, we, p).magnitude(); };
    if (vmag(lo) > voltage_limit) {
        throw Error(Errc::infeasible, "voltage limit " + std::to_string(voltage_limit) +
                                          " V unreachable at " + std::to_string(we) + " rad/s");
    }
    for (int it = 0; it < kBisectionIterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = vmag(mid);
        if (v > voltage_limit) {
            hi = mid;
        } else {
            lo = mid;
        }
        if (voltage_limit - vmag(lo) <= kVoltageTolerance || hi - lo <= 0.0) break;
    }
    return make_operating_point({lo, iq}, we, p);
}

bool solve_min_d_current(double shaft_power, double we, const MotorParams& p,
                         double current_ceiling,
                         const std::function<bool(const OperatingPoint&)>& acceptable,
                         OperatingPoint& out) {
    const double iq = torque_current(shaft_power, we, p);
    if (std::abs(iq) > current_ceiling) return false;
    auto at = [&](double id) { return make_operating_point({id, iq}, we, p); };

    OperatingPoint candidate = at(0.0);
    if (acceptable(candidate)) {
        out = candidate;
        return true;
    }
    const double id_floor = -std::sqrt(current_ceiling * current_ceiling - iq * iq);
    double prev = 0.0;
    for (int k = 1; k <= kScanCells; ++k) {
        const double id = id_floor * static_cast<double>(k) / kScanCells;
        if (!acceptable(at(id))) {
            prev = id;
            continue;
        }
        double bad = prev;
        double good = id;
        for (int it = 0; it < kBisectionIterations && bad - good > 1e-12; ++it) {
            const double mid = 0.5 * (bad + good);
            if (acceptable(at(mid))) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        out = at(good);
        return true;
    }
    return false;
}

}  // namespace fcev
