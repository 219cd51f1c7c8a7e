#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fcev {

/// Stack polarization curve: a linear V_oc - R_int I model, or a
/// piecewise-linear table of (current, voltage) breakpoints.
class FuelCellCurve {
public:
    /// Default stack: 500 V open circuit, 0.87 ohm, 70 kW rated.
    FuelCellCurve();

    static FuelCellCurve linear(double open_circuit_voltage, double internal_resistance,
                                double rated_power, double max_current);
    /// Breakpoints must start at 0 A with strictly increasing current and
    /// strictly decreasing voltage.
    static FuelCellCurve table(std::vector<std::pair<double, double>> points, double rated_power);

    bool is_linear() const noexcept { return points_.empty(); }
    double rated_power() const noexcept { return rated_power_; }
    double max_current() const noexcept { return max_current_; }
    /// Current at the power maximum; the usable branch is [0, this].
    double usable_current_limit() const noexcept { return usable_limit_; }
    double max_power() const noexcept;

    /// Throws Errc::out_of_range outside [0, max_current].
    double voltage_at_current(double current) const;

    /// Usable-branch (low-current) solution of V(I) I = P. Throws
    /// Errc::out_of_range for negative P, Errc::unreachable above the curve
    /// maximum.
    double current_at_power(double power) const;

    /// Convenience: terminal voltage when delivering `power`.
    double voltage_at_power(double power) const { return voltage_at_current(current_at_power(power)); }

private:
    void finish();

    double open_circuit_voltage_ = 0.0;
    double internal_resistance_ = 0.0;
    std::vector<std::pair<double, double>> points_;
    double rated_power_ = 0.0;
    double max_current_ = 0.0;
    double usable_limit_ = 0.0;
};

/// CSV with header "current_A,voltage_V".
FuelCellCurve parse_fuel_cell_table(std::istream& in, double rated_power);
FuelCellCurve load_fuel_cell_table(const std::string& path, double rated_power);

}  // namespace fcev
