#include "fcev/power_sharing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fcev/error.hpp"

namespace fcev {

namespace {

constexpr double kLimitSlack = 1e-9;  // V

}  // namespace

void SharingPolicy::validate() const {
    if (!(time_constant > 0.0)) throw Error(Errc::config_error, "sharing time constant must be positive");
    if (!(min_power >= 0.0) || !(min_power < max_power)) {
        throw Error(Errc::config_error, "sharing power limits need 0 <= P_min < P_max");
    }
    if (!(slew_limit > 0.0)) throw Error(Errc::config_error, "sharing slew limit must be positive");
}

FcReferenceFilter::FcReferenceFilter(SharingPolicy policy) : policy_(policy) { policy_.validate(); }

double FcReferenceFilter::step(double demand, double dt) {
    const double input = std::max(demand, 0.0);
    if (!started_) {
        started_ = true;
        filtered_ = input;
        output_ = std::clamp(filtered_, policy_.min_power, policy_.max_power);
        return output_;
    }
    if (!(dt > 0.0)) throw Error(Errc::domain_error, "filter time step must be positive");
    filtered_ += -std::expm1(-dt / policy_.time_constant) * (input - filtered_);
    const double target = std::clamp(filtered_, policy_.min_power, policy_.max_power);
    const double max_step = policy_.slew_limit * dt;
    output_ = std::clamp(target, output_ - max_step, output_ + max_step);
    return output_;
}

std::vector<double> fc_power_reference(std::span<const double> demand, const SharingPolicy& policy,
                                       double dt) {
    if (!(dt > 0.0)) throw Error(Errc::domain_error, "time step must be positive");
    if (demand.empty()) throw Error(Errc::domain_error, "demand trace is empty");
    FcReferenceFilter f(policy);
    std::vector<double> out;
    out.reserve(demand.size());
    for (double p : demand) out.push_back(f.step(p, dt));
    return out;
}

std::vector<double> fc_power_reference(std::span<const double> time, std::span<const double> demand,
                                       const SharingPolicy& policy) {
    if (time.size() != demand.size()) throw Error(Errc::domain_error, "time and demand lengths differ");
    if (demand.empty()) throw Error(Errc::domain_error, "demand trace is empty");
    FcReferenceFilter f(policy);
    std::vector<double> out;
    out.reserve(demand.size());
    for (std::size_t i = 0; i < demand.size(); ++i) {
        out.push_back(f.step(demand[i], i == 0 ? 0.0 : time[i] - time[i - 1]));
    }
    return out;
}

PowerSplit split_voltage(const OperatingPoint& op, double fc_power, double fc_voltage,
                         double battery_voltage, double max_modulation) {
    if (!(fc_power >= 0.0)) throw Error(Errc::domain_error, "fuel-cell power cannot be negative");
    const Dq& i = op.current;
    const double i2 = i.dot(i);
    PowerSplit s;
    if (fc_power > 0.0) {
        if (i2 == 0.0) {
            throw Error(Errc::zero_current, "fuel-cell power " + std::to_string(fc_power) +
                                                " W requested with zero phase current");
        }
        s.fc_voltage = (fc_power / (1.5 * i2)) * i;
    }
    const double fc_cap = max_modulation * fc_voltage / 2.0;
    if (s.fc_voltage.magnitude() > fc_cap + kLimitSlack) {
        throw Error(Errc::fc_voltage_limit, "FC inverter needs " + std::to_string(s.fc_voltage.magnitude()) +
                                                " V, limit " + std::to_string(fc_cap) + " V");
    }
    s.battery_voltage = op.voltage - s.fc_voltage;
    const double bat_cap = max_modulation * battery_voltage / 2.0;
    if (s.battery_voltage.magnitude() > bat_cap + kLimitSlack) {
        throw Error(Errc::bat_voltage_limit, "battery inverter needs " +
                                                 std::to_string(s.battery_voltage.magnitude()) + " V, limit " +
                                                 std::to_string(bat_cap) + " V");
    }
    s.fc_power = electrical_power(s.fc_voltage, i);
    s.battery_power = electrical_power(s.battery_voltage, i);
    return s;
}

std::optional<PowerWindow> fc_power_window(const OperatingPoint& op, double fc_voltage,
                                           double battery_voltage, double max_modulation) {
    const Dq& i = op.current;
    const Dq& v = op.voltage;
    const double i2 = i.dot(i);
    const double fc_cap = max_modulation * fc_voltage / 2.0;
    const double bat_cap = max_modulation * battery_voltage / 2.0;
    if (i2 == 0.0) {
        if (v.magnitude() <= bat_cap + kLimitSlack) return PowerWindow{0.0, 0.0};
        return std::nullopt;
    }
    // |v - k i| <= bat_cap is a quadratic inequality in k.
    const double vi = v.dot(i);
    const double disc = vi * vi - i2 * (v.dot(v) - bat_cap * bat_cap);
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    const double k_lo = std::max((vi - root) / i2, 0.0);
    const double k_hi = std::min((vi + root) / i2, fc_cap / std::sqrt(i2));
    if (k_lo > k_hi) return std::nullopt;
    return PowerWindow{1.5 * k_lo * i2, 1.5 * k_hi * i2};
}

InverterConditions inverter_conditions(Dq voltage, Dq current, double dc_voltage,
                                       double switching_frequency) {
    InverterConditions c;
    c.current_peak = current.magnitude();
    c.dc_voltage = dc_voltage;
    c.switching_frequency = switching_frequency;
    double m = 2.0 * voltage.magnitude() / dc_voltage;
    if (m > 1.0 && m <= 1.0 + 1e-9) m = 1.0;
    c.modulation = m;
    const double denom = voltage.magnitude() * c.current_peak;
    c.displacement = denom > 0.0 ? std::clamp(voltage.dot(current) / denom, -1.0, 1.0) : 1.0;
    return c;
}

FcConstraintReport validate_fc_constraints(std::span<const double> trace, const SharingPolicy& policy,
                                           double dt) {
    FcConstraintReport r;
    if (trace.empty()) return r;
    r.min_power = std::numeric_limits<double>::infinity();
    const double floor = policy.min_power * (1.0 - 1e-12);
    const double slew_cap = policy.slew_limit * (1.0 + 1e-9);
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const double p = trace[k];
        r.min_power = std::min(r.min_power, p);
        if (p < 0.0 && !r.first_negative) r.first_negative = k;
        if (p < floor && !r.first_below_min) r.first_below_min = k;
        if (k > 0) {
            const double slew = std::abs(p - trace[k - 1]) / dt;
            r.max_slew = std::max(r.max_slew, slew);
            if (slew > slew_cap && !r.first_slew_violation) r.first_slew_violation = k;
        }
    }
    return r;
}

}  // namespace fcev
