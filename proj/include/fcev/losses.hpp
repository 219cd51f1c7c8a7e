#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fcev {

/// Datasheet characteristics of one IGBT/diode half-bridge module.
struct PowerModuleParams {
    std::string label;
    double blocking_voltage = 0.0;   // V_ces, V
    double nominal_voltage = 0.0;    // V_nom, V
    double nominal_current = 0.0;    // I_nom, A
    double igbt_threshold = 0.0;     // V_ce0, V
    double diode_threshold = 0.0;    // V_D0, V
    double igbt_resistance = 0.0;    // R_on, ohm
    double diode_resistance = 0.0;   // R_D, ohm
    double turn_on_energy = 0.0;     // E_on at I_nom, V_nom, J
    double turn_off_energy = 0.0;    // E_off, J
    double recovery_energy = 0.0;    // E_rec, J

    void validate() const;
};

PowerModuleParams fs400r07a3e3();
PowerModuleParams fs400r12a2t4();
PowerModuleParams ff450r12kt4p();

/// The three shipped module rows.
std::vector<PowerModuleParams> default_modules();

/// Looks a module up by label; throws Errc::config_error if absent.
const PowerModuleParams& find_module(const std::vector<PowerModuleParams>& modules,
                                     std::string_view label);

/// Parses a module table. Header:
/// label,V_ces,V_nom,I_nom,V_ce0,V_D0,R_on,R_D,E_on,E_off,E_rec (SI units).
std::vector<PowerModuleParams> parse_modules(std::istream& in);
std::vector<PowerModuleParams> load_modules(const std::string& path);

struct InverterConditions {
    double current_peak = 0.0;         // I_s,pk, A
    double modulation = 0.0;           // m in [0, 1]
    double displacement = 1.0;         // cos phi in [-1, 1]
    double dc_voltage = 0.0;           // V
    double switching_frequency = 0.0;  // Hz

    void validate() const;
};

/// Per-device loss pair. `clamped` is set when a formula had to be floored
/// at zero.
struct DeviceLoss {
    double igbt = 0.0;
    double diode = 0.0;
    bool clamped = false;
};

struct BoostParams {
    double inductance = 0.3e-3;           // H
    double inductor_resistance = 1.2e-3;  // ohm
    double switching_frequency = 20e3;    // Hz
    PowerModuleParams module = ff450r12kt4p();

    void validate() const;
};

enum class Converter { fc_inverter, battery_inverter, traction_inverter, boost };
inline constexpr std::array<Converter, 4> all_converters = {
    Converter::fc_inverter, Converter::battery_inverter, Converter::traction_inverter,
    Converter::boost};
const char* to_string(Converter c) noexcept;

/// Loss components of a single converter, W.
struct ConverterLoss {
    double igbt_conduction = 0.0;
    double diode_conduction = 0.0;
    double igbt_switching = 0.0;
    double diode_recovery = 0.0;
    double inductor_copper = 0.0;

    double conduction() const noexcept { return igbt_conduction + diode_conduction; }
    double switching() const noexcept { return igbt_switching + diode_recovery; }
    double total() const noexcept { return conduction() + switching() + inductor_copper; }
};

/// Drivetrain loss for one topology at one instant, grouped per converter.
class LossBreakdown {
public:
    void set(Converter c, const ConverterLoss& loss);
    bool has(Converter c) const noexcept { return present_[index(c)]; }
    const ConverterLoss& get(Converter c) const noexcept { return parts_[index(c)]; }

    double motor_copper = 0.0;

    double igbt_conduction() const noexcept;
    double diode_conduction() const noexcept;
    double igbt_switching() const noexcept;
    double diode_recovery() const noexcept;
    double inductor_copper() const noexcept;

    /// Converter losses only (inverters plus boost).
    double converters_total() const noexcept;
    double total() const noexcept { return converters_total() + motor_copper; }

private:
    static constexpr std::size_t index(Converter c) noexcept { return static_cast<std::size_t>(c); }
    std::array<ConverterLoss, 4> parts_{};
    std::array<bool, 4> present_{};
};

/// Per-device conduction loss of an IGBT and its antiparallel diode under
/// sinusoidal PWM. Throws Errc::domain_error if m > 1.
DeviceLoss conduction_losses(const InverterConditions& c, const PowerModuleParams& mod);

/// Per-device switching (E_on + E_off) and diode recovery loss. Energies
/// scale linearly with current relative to I_nom and with V_dc / V_nom.
DeviceLoss switching_losses(const InverterConditions& c, const PowerModuleParams& mod);

/// Six device positions of a two-level three-phase bridge.
ConverterLoss inverter_loss(const InverterConditions& c, const PowerModuleParams& mod);

/// Average-model loss of the unidirectional boost stage carrying I_fc from
/// V_fc up to V_bus. Throws Errc::domain_error if V_fc > V_bus.
ConverterLoss boost_converter_loss(double fc_current, double fc_voltage, double bus_voltage,
                                   const BoostParams& bp);

/// Conduction loss by numerical quadrature of the instantaneous device
/// dissipation over a fundamental period. Independent of the closed form.
DeviceLoss conduction_loss_oracle(const InverterConditions& c, const PowerModuleParams& mod);

}  // namespace fcev
