#pragma once

#include <optional>
#include <string_view>

#include "fcev/fuel_cell.hpp"
#include "fcev/losses.hpp"
#include "fcev/motor.hpp"
#include "fcev/power_sharing.hpp"
#include "fcev/vehicle.hpp"

namespace fcev {

enum class TopologyKind { dual_inverter, conventional };

const char* to_string(TopologyKind kind) noexcept;
TopologyKind parse_topology(std::string_view text);

/// Everything needed to evaluate one drivetrain.
struct TopologyConfig {
    TopologyKind kind = TopologyKind::dual_inverter;
    double battery_voltage = 400.0;
    double switching_frequency = 10e3;
    /// Both bridges of the dual drive, or the traction bridge of the
    /// conventional drive.
    PowerModuleParams inverter_module = fs400r07a3e3();
    std::optional<BoostParams> boost;
    double max_modulation = 1.0;
    /// Current ceiling as a multiple of the inverter module's I_nom.
    double current_ceiling_factor = 2.0;

    SharingPolicy policy;
    FuelCellCurve fuel_cell;
    MotorParams motor;
    VehicleParams vehicle;
    EnvironmentConstants environment;

    double current_ceiling() const noexcept {
        return current_ceiling_factor * inverter_module.nominal_current;
    }
    void validate() const;
};

TopologyConfig default_dual_config();
TopologyConfig default_conventional_config();
TopologyConfig default_config(TopologyKind kind);

/// Quasi-static evaluation of one drivetrain operating point.
struct PointResult {
    OperatingPoint op;
    std::optional<PowerSplit> split;  // dual drive only
    LossBreakdown losses;
    double shaft_power = 0.0;  // P_ac
    double dc_power = 0.0;     // P_dc = P_ac + drivetrain loss
    double fc_power = 0.0;     // at the stack terminals
    double battery_power = 0.0;
    double fc_voltage = 0.0;
    double fc_current = 0.0;
    /// True when the FC power had to be moved off the requested value to
    /// keep the voltage split realisable.
    bool fc_adjusted = false;
};

/// Evaluates the drivetrain delivering `shaft_power` at `electrical_speed`
/// with the fuel cell asked for `fc_power`.
///
/// Dual drive: the smallest d-axis current that lets the collinear voltage
/// split deliver `fc_power` is used. When no d-axis current achieves that and
/// `allow_fc_adjust` is set, the FC power is moved to the nearest realisable
/// value; otherwise the split error is thrown.
///
/// Conventional drive: field weakening against V_bat/2 and the boost stage
/// carries `fc_power` from the stack.
PointResult evaluate_point(const TopologyConfig& cfg, double shaft_power, double electrical_speed,
                           double fc_power, bool allow_fc_adjust = false);

}  // namespace fcev
