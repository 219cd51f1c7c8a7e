#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fcev/drivetrain.hpp"
#include "fcev/switched_sim.hpp"

namespace fcev {

/// Parameters of a whole toolkit run: both drivetrains plus simulation and
/// analysis settings.
struct ToolkitConfig {
    TopologyConfig dual = default_dual_config();
    TopologyConfig conventional = default_conventional_config();
    std::vector<PowerModuleParams> modules = default_modules();
    SimOptions simulation;
    /// Motor speed used by single-point analysis when none is given, rad/s.
    double validation_speed = 1500.0;
    /// Plateau tolerance for voltage level counting, V.
    double level_tolerance = 5.0;
    double level_min_share = 0.002;
    /// Files the configuration pulled in, in load order.
    std::vector<std::string> sources;

    const TopologyConfig& topology(TopologyKind kind) const noexcept {
        return kind == TopologyKind::dual_inverter ? dual : conventional;
    }
    void validate() const;
};

/// INI-style configuration:
///
///   [motor]        p, L_s, R_s, psi_m
///   [vehicle]      M_car, A_f, C_d, C_r, gear_ratio, r_tire
///   [environment]  rho_air, g
///   [sharing]      tau, P_min, P_max, slew
///   [fuel_cell]    V_oc, R_int, rated_power, max_current | table, rated_power
///   [modules]      file
///   [dual]         V_bat, f_sw, module, m_max, ceiling_factor
///   [conventional] V_bus, f_sw, module, m_max, ceiling_factor,
///                  boost_module, L_boost, R_boost, f_boost
///   [simulation]   steps_per_carrier, settle_periods, measured_periods,
///                  level_tolerance, level_min_share
///   [analysis]     speed
///
/// Relative file paths resolve against `base_dir`. Unknown sections or keys
/// are errors.
ToolkitConfig parse_config(std::istream& in, const std::string& base_dir = ".");
ToolkitConfig load_config(const std::string& path);

}  // namespace fcev
