#pragma once

#include <span>
#include <vector>

namespace fcev {

struct VehicleParams {
    double mass = 1642.9;               // kg
    double frontal_area = 2.1;          // m^2
    double drag_coefficient = 0.32;
    double rolling_coefficient = 0.024;
    double gear_ratio = 7.82;
    double tire_radius = 0.3289;        // m

    void validate() const;
};

struct EnvironmentConstants {
    double air_density = 1.225;  // kg/m^3
    double gravity = 9.81;       // m/s^2

    void validate() const;
};

struct RoadLoad {
    double acceleration = 0.0;  // P_car, W
    double resistive = 0.0;     // P_loss,mech (drag + rolling), W
    double shaft = 0.0;         // P_ac, W
};

/// Traction power needed at speed v (m/s) and acceleration a (m/s^2).
RoadLoad mech_power(double speed, double acceleration, const VehicleParams& vp,
                    const EnvironmentConstants& env);

struct ShaftSpeed {
    double mechanical = 0.0;  // rad/s
    double electrical = 0.0;  // rad/s
};

ShaftSpeed motor_shaft_speed(double speed, const VehicleParams& vp, int pole_pairs);

/// dv/dt by central differences, one-sided at the ends.
std::vector<double> central_difference(std::span<const double> t, std::span<const double> v);

struct RoadLoadSeries {
    std::vector<double> acceleration;
    std::vector<double> resistive;
    std::vector<double> shaft;
};

/// Batch road load over a whole trace, evaluated with the active kernels.
RoadLoadSeries road_load_series(std::span<const double> speed, std::span<const double> accel,
                                const VehicleParams& vp, const EnvironmentConstants& env);

}  // namespace fcev
