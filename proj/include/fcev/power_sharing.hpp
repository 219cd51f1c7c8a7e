#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fcev/losses.hpp"
#include "fcev/motor.hpp"

namespace fcev {

struct SharingPolicy {
    double time_constant = 5.0;  // s
    double min_power = 3.5e3;    // W
    double max_power = 70e3;     // W
    double slew_limit = 5e3;     // W/s

    void validate() const;
};

/// Streaming fuel-cell reference generator: first-order low-pass of the
/// non-negative demand, clamped to [P_min, P_max], then slew limited.
class FcReferenceFilter {
public:
    explicit FcReferenceFilter(SharingPolicy policy);

    /// Advances by `dt` seconds with the current demand and returns the
    /// reference. `dt` is ignored on the first call, which seeds the state.
    double step(double demand, double dt);
    void reset() noexcept { started_ = false; }

private:
    SharingPolicy policy_;
    bool started_ = false;
    double filtered_ = 0.0;
    double output_ = 0.0;
};

std::vector<double> fc_power_reference(std::span<const double> demand, const SharingPolicy& policy,
                                       double dt);
/// Same for a non-uniform time base.
std::vector<double> fc_power_reference(std::span<const double> time, std::span<const double> demand,
                                       const SharingPolicy& policy);

struct PowerSplit {
    Dq fc_voltage;
    Dq battery_voltage;
    double fc_power = 0.0;
    double battery_power = 0.0;
};

/// Splits the motor voltage vector between the FC and battery inverters.
/// The FC share is collinear with the current, sized to deliver exactly
/// `fc_power`; the battery inverter supplies the remainder.
///
/// Throws Errc::zero_current, Errc::fc_voltage_limit or
/// Errc::bat_voltage_limit when the split is not realisable.
PowerSplit split_voltage(const OperatingPoint& op, double fc_power, double fc_voltage,
                         double battery_voltage, double max_modulation);

/// Interval of FC powers for which the collinear split is realisable at this
/// operating point, or nullopt if none is.
struct PowerWindow {
    double low = 0.0;
    double high = 0.0;
};
std::optional<PowerWindow> fc_power_window(const OperatingPoint& op, double fc_voltage,
                                           double battery_voltage, double max_modulation);

/// Loss conditions for one inverter producing `voltage` while carrying the
/// common phase current: m = 2|v|/V_dc and cos phi from the vector angle.
InverterConditions inverter_conditions(Dq voltage, Dq current, double dc_voltage,
                                       double switching_frequency);

struct FcConstraintReport {
    double min_power = 0.0;
    double max_slew = 0.0;  // W/s
    std::optional<std::size_t> first_negative;
    std::optional<std::size_t> first_below_min;
    std::optional<std::size_t> first_slew_violation;

    bool passed() const noexcept {
        return !first_negative && !first_below_min && !first_slew_violation;
    }
};

/// Checks a fuel-cell power trace against the floor, unidirectionality and
/// slew-rate constraints.
FcConstraintReport validate_fc_constraints(std::span<const double> trace, const SharingPolicy& policy,
                                           double dt);

}  // namespace fcev
