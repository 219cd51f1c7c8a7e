#pragma once

#include <cmath>
#include <functional>

namespace fcev {

/// A quantity in the rotor-aligned dq frame (amplitude-invariant scaling).
struct Dq {
    double d = 0.0;
    double q = 0.0;

    double magnitude() const noexcept { return std::hypot(d, q); }
    double dot(const Dq& o) const noexcept { return d * o.d + q * o.q; }
    /// z-component of the 2-D cross product this x o.
    double cross(const Dq& o) const noexcept { return d * o.q - q * o.d; }

    friend Dq operator+(Dq a, Dq b) noexcept { return {a.d + b.d, a.q + b.q}; }
    friend Dq operator-(Dq a, Dq b) noexcept { return {a.d - b.d, a.q - b.q}; }
    friend Dq operator*(double k, Dq a) noexcept { return {k * a.d, k * a.q}; }
};

/// Non-salient PMSM (L_d = L_q = L_s).
struct MotorParams {
    int pole_pairs = 5;
    double inductance = 0.838e-3;   // H
    double resistance = 45e-3;      // ohm
    double flux_linkage = 0.127;    // Wb

    void validate() const;
};

struct OperatingPoint {
    double electrical_speed = 0.0;  // rad/s
    Dq current;                     // A, peak
    Dq voltage;                     // V, peak

    double current_peak() const noexcept { return current.magnitude(); }
    double voltage_peak() const noexcept { return voltage.magnitude(); }
};

/// Steady-state stator voltages (d/dt terms dropped).
Dq steady_state_voltages(Dq current, double electrical_speed, const MotorParams& params) noexcept;

/// Three-phase electrical power from dq quantities, 1.5 (v_d i_d + v_q i_q).
double electrical_power(Dq voltage, Dq current) noexcept;

/// Electromagnetic torque 1.5 p psi_m i_q.
double torque(Dq current, const MotorParams& params) noexcept;

/// 3 I^2 R with I the RMS phase current.
double motor_copper_loss(double rms_current, double resistance);

/// Same loss expressed with the peak phase current (I_rms = I_pk / sqrt 2).
double motor_copper_loss_from_peak(double peak_current, double resistance);

/// Builds the operating point for currents (i_d, i_q) at the given speed.
OperatingPoint make_operating_point(Dq current, double electrical_speed, const MotorParams& params) noexcept;

/// q-axis current that produces the requested shaft power at i_d = 0.
/// Throws Errc::zero_speed_power for nonzero power at zero speed.
double torque_current(double shaft_power, double electrical_speed, const MotorParams& params);

/// d-axis current minimising |v| for a given i_q; -w^2 L psi / (R^2 + w^2 L^2).
double min_voltage_d_current(double electrical_speed, const MotorParams& params) noexcept;

/// Steady-state point delivering `shaft_power` at `electrical_speed`.
///
/// Shaft power maps to i_q through the torque constant; copper loss is
/// carried inside the electrical power. i_d stays zero while the peak phase
/// voltage fits `voltage_limit`; otherwise the smallest |i_d| (i_d < 0) that
/// brings |v| down to the limit is found by bisection.
///
/// Throws Errc::zero_speed_power, or Errc::infeasible when the limit cannot
/// be met within `current_ceiling` (peak amps).
OperatingPoint solve_operating_point(double shaft_power, double electrical_speed,
                                     const MotorParams& params, double voltage_limit,
                                     double current_ceiling);

/// Generalised field weakening: smallest |i_d| (i_d <= 0) for which
/// `acceptable` holds, scanning down to the current ceiling and refining the
/// first acceptable cell by bisection. Returns false if nothing qualifies.
bool solve_min_d_current(double shaft_power, double electrical_speed, const MotorParams& params,
                         double current_ceiling,
                         const std::function<bool(const OperatingPoint&)>& acceptable,
                         OperatingPoint& out);

}  // namespace fcev
