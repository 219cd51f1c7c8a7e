#include "fcev/vehicle.hpp"

#include "fcev/error.hpp"
#include "fcev/kernels.hpp"

namespace fcev {

void VehicleParams::validate() const {
    if (!(mass > 0.0) || !(frontal_area > 0.0) || !(drag_coefficient > 0.0) ||
        !(rolling_coefficient > 0.0) || !(gear_ratio > 0.0) || !(tire_radius > 0.0)) {
        throw Error(Errc::config_error, "vehicle parameters must all be positive");
    }
}

void EnvironmentConstants::validate() const {
    if (!(air_density > 0.0) || !(gravity > 0.0)) {
        throw Error(Errc::config_error, "air density and gravity must be positive");
    }
}

namespace {

kernels::RoadLoadCoeffs coeffs(const VehicleParams& vp, const EnvironmentConstants& env) {
    return {vp.mass, 0.5 * env.air_density * vp.drag_coefficient * vp.frontal_area,
            vp.rolling_coefficient * vp.mass * env.gravity};
}

}  // namespace

RoadLoad mech_power(double v, double a, const VehicleParams& vp, const EnvironmentConstants& env) {
    if (!(v >= 0.0)) throw Error(Errc::domain_error, "vehicle speed must be non-negative");
    const auto c = coeffs(vp, env);
    RoadLoad r;
    r.acceleration = c.mass * v * a;
    r.resistive = v * (c.drag_factor * v * v + c.rolling_force);
    r.shaft = r.acceleration + r.resistive;
    return r;
}

ShaftSpeed motor_shaft_speed(double v, const VehicleParams& vp, int pole_pairs) {
    if (!(v >= 0.0)) throw Error(Errc::domain_error, "vehicle speed must be non-negative");
    const double wheel = v / vp.tire_radius;
    const double mech = vp.gear_ratio * wheel;
    return {mech, pole_pairs * mech};
}

std::vector<double> central_difference(std::span<const double> t, std::span<const double> v) {
    if (t.size() != v.size()) throw Error(Errc::domain_error, "time and speed lengths differ");
    std::vector<double> out(t.size());
    kernels::active().central_difference(t.data(), v.data(), t.size(), out.data());
    return out;
}

RoadLoadSeries road_load_series(std::span<const double> speed, std::span<const double> accel,
                                const VehicleParams& vp, const EnvironmentConstants& env) {
    if (speed.size() != accel.size()) throw Error(Errc::domain_error, "speed and acceleration lengths differ");
    const std::size_t n = speed.size();
    RoadLoadSeries s{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
    kernels::active().road_load(speed.data(), accel.data(), n, coeffs(vp, env), s.acceleration.data(),
                                s.resistive.data(), s.shaft.data());
    return s;
}

}  // namespace fcev
