#include "fcev/losses.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "fcev/error.hpp"
#include "fcev/kernels.hpp"
#include "text.hpp"

namespace fcev {

using std::numbers::pi;

void PowerModuleParams::validate() const {
    const double fields[] = {blocking_voltage, nominal_voltage, nominal_current,
                             igbt_threshold,   diode_threshold, igbt_resistance,
                             diode_resistance, turn_on_energy,  turn_off_energy,
                             recovery_energy};
    for (double f : fields) {
        if (!(f > 0.0)) throw Error(Errc::config_error, "module '" + label + "': all parameters must be positive");
    }
    if (!(nominal_voltage < blocking_voltage)) {
        throw Error(Errc::config_error, "module '" + label + "': V_nom must be below V_ces");
    }
}

PowerModuleParams fs400r07a3e3() {
    return {"FS400R07A3E3", 705.0, 300.0, 400.0, 0.798, 0.95, 2.2e-3, 1.4e-3,
            2.24e-3, 8.165e-3, 5.151e-3};
}

PowerModuleParams fs400r12a2t4() {
    return {"FS400R12A2T4", 1200.0, 500.0, 300.0, 0.889, 0.92, 3e-3, 1.78e-3,
            16.5e-3, 18.272e-3, 14.331e-3};
}

PowerModuleParams ff450r12kt4p() {
    return {"FF450R12KT4P", 1200.0, 600.0, 450.0, 0.78, 0.8, 2.78e-3, 1.27e-3,
            13.689e-3, 18.31e-3, 23.936e-3};
}

std::vector<PowerModuleParams> default_modules() {
    return {fs400r07a3e3(), fs400r12a2t4(), ff450r12kt4p()};
}

const PowerModuleParams& find_module(const std::vector<PowerModuleParams>& modules,
                                     std::string_view label) {
    for (const auto& m : modules) {
        if (m.label == label) return m;
    }
    throw Error(Errc::config_error, "unknown power module '" + std::string(label) + "'");
}

std::vector<PowerModuleParams> parse_modules(std::istream& in) {
    static constexpr std::string_view kHeader[] = {"label", "V_ces", "V_nom", "I_nom", "V_ce0", "V_D0",
                                                   "R_on",  "R_D",   "E_on",  "E_off", "E_rec"};
    std::vector<PowerModuleParams> out;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::is_blank_or_comment(line)) continue;
        const auto cols = text::split(line);
        if (!header_seen) {
            if (cols.size() != std::size(kHeader) || !std::equal(cols.begin(), cols.end(), std::begin(kHeader))) {
                throw Error(Errc::parse_error, "line " + std::to_string(lineno) +
                                                   ": expected header label,V_ces,V_nom,I_nom,V_ce0,V_D0,R_on,R_D,E_on,E_off,E_rec");
            }
            header_seen = true;
            continue;
        }
        if (cols.size() != std::size(kHeader)) {
            throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": expected 11 columns");
        }
        double v[10];
        for (int k = 0; k < 10; ++k) {
            const auto d = text::to_double(cols[k + 1]);
            if (!d) {
                throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": bad number '" +
                                                   std::string(cols[k + 1]) + "'");
            }
            v[k] = *d;
        }
        PowerModuleParams m{std::string(cols[0]), v[0], v[1], v[2], v[3], v[4],
                            v[5],                 v[6], v[7], v[8], v[9]};
        m.validate();
        out.push_back(std::move(m));
    }
    if (!header_seen) throw Error(Errc::parse_error, "module table is empty");
    return out;
}

std::vector<PowerModuleParams> load_modules(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::config_error, "cannot open module table '" + path + "'");
    return parse_modules(in);
}

void InverterConditions::validate() const {
    if (!(current_peak >= 0.0)) throw Error(Errc::domain_error, "peak current must be non-negative");
    if (!(dc_voltage > 0.0)) throw Error(Errc::domain_error, "DC-link voltage must be positive");
    if (!(switching_frequency > 0.0)) throw Error(Errc::domain_error, "switching frequency must be positive");
    if (!(modulation >= 0.0) || modulation > 1.0) {
        throw Error(Errc::domain_error, "modulation index " + std::to_string(modulation) +
                                            " outside the linear range [0, 1]");
    }
    if (!(std::abs(displacement) <= 1.0)) {
        throw Error(Errc::domain_error, "displacement factor outside [-1, 1]");
    }
}

const char* to_string(Converter c) noexcept {
    switch (c) {
        case Converter::fc_inverter: return "fc_inverter";
        case Converter::battery_inverter: return "battery_inverter";
        case Converter::traction_inverter: return "traction_inverter";
        case Converter::boost: return "boost";
    }
    return "unknown";
}

void LossBreakdown::set(Converter c, const ConverterLoss& loss) {
    parts_[index(c)] = loss;
    present_[index(c)] = true;
}

namespace {

template <class F>
double sum_parts(const std::array<ConverterLoss, 4>& parts, F&& f) {
    double s = 0.0;
    for (const auto& p : parts) s += f(p);
    return s;
}

}  // namespace

double LossBreakdown::igbt_conduction() const noexcept {
    return sum_parts(parts_, [](const ConverterLoss& p) { return p.igbt_conduction; });
}
double LossBreakdown::diode_conduction() const noexcept {
    return sum_parts(parts_, [](const ConverterLoss& p) { return p.diode_conduction; });
}
double LossBreakdown::igbt_switching() const noexcept {
    return sum_parts(parts_, [](const ConverterLoss& p) { return p.igbt_switching; });
}
double LossBreakdown::diode_recovery() const noexcept {
    return sum_parts(parts_, [](const ConverterLoss& p) { return p.diode_recovery; });
}
double LossBreakdown::inductor_copper() const noexcept {
    return sum_parts(parts_, [](const ConverterLoss& p) { return p.inductor_copper; });
}
double LossBreakdown::converters_total() const noexcept {
    return sum_parts(parts_, [](const ConverterLoss& p) { return p.total(); });
}

DeviceLoss conduction_losses(const InverterConditions& c, const PowerModuleParams& mod) {
    c.validate();
    const double i = c.current_peak;
    const double mc = c.modulation * c.displacement;
    const double igbt_base = 0.5 * (mod.igbt_threshold * i / pi + mod.igbt_resistance * i * i / 4.0);
    const double igbt_mod = mod.igbt_threshold * i / 8.0 + mod.igbt_resistance * i * i / (3.0 * pi);
    const double diode_base = 0.5 * (mod.diode_threshold * i / pi + mod.diode_resistance * i * i / 4.0);
    const double diode_mod = mod.diode_threshold * i / 8.0 + mod.diode_resistance * i * i / (3.0 * pi);

    DeviceLoss out{igbt_base + mc * igbt_mod, diode_base - mc * diode_mod, false};
    if (out.igbt < 0.0) {
        out.igbt = 0.0;
        out.clamped = true;
    }
    if (out.diode < 0.0) {
        out.diode = 0.0;
        out.clamped = true;
    }
    return out;
}

DeviceLoss switching_losses(const InverterConditions& c, const PowerModuleParams& mod) {
    if (!(c.current_peak >= 0.0) || !(c.dc_voltage > 0.0) || !(c.switching_frequency > 0.0)) {
        throw Error(Errc::domain_error, "switching loss needs I >= 0, V_dc > 0, f_sw > 0");
    }
    const double current_scale = c.current_peak / mod.nominal_current;
    const double per_energy = current_scale * c.switching_frequency * c.dc_voltage / (pi * mod.nominal_voltage);
    return {(mod.turn_on_energy + mod.turn_off_energy) * per_energy, mod.recovery_energy * per_energy, false};
}

ConverterLoss inverter_loss(const InverterConditions& c, const PowerModuleParams& mod) {
    const DeviceLoss cond = conduction_losses(c, mod);
    const DeviceLoss sw = switching_losses(c, mod);
    ConverterLoss out;
    out.igbt_conduction = 6.0 * cond.igbt;
    out.diode_conduction = 6.0 * cond.diode;
    out.igbt_switching = 6.0 * sw.igbt;
    out.diode_recovery = 6.0 * sw.diode;
    return out;
}

void BoostParams::validate() const {
    if (!(inductance > 0.0)) throw Error(Errc::config_error, "boost inductance must be positive");
    if (!(inductor_resistance >= 0.0)) throw Error(Errc::config_error, "boost ESR must be non-negative");
    if (!(switching_frequency > 0.0)) throw Error(Errc::config_error, "boost switching frequency must be positive");
    module.validate();
}

ConverterLoss boost_converter_loss(double i_fc, double v_fc, double v_bus, const BoostParams& bp) {
    if (!(i_fc >= 0.0)) throw Error(Errc::domain_error, "boost input current must be non-negative");
    if (!(v_fc > 0.0)) throw Error(Errc::domain_error, "fuel-cell voltage must be positive");
    if (v_fc > v_bus) {
        throw Error(Errc::domain_error, "boost cannot step " + std::to_string(v_fc) + " V down to " +
                                            std::to_string(v_bus) + " V");
    }
    const auto& m = bp.module;
    const double duty = 1.0 - v_fc / v_bus;
    const double per_energy = (i_fc / m.nominal_current) * bp.switching_frequency * v_bus / m.nominal_voltage;

    ConverterLoss out;
    out.igbt_conduction = duty * (m.igbt_threshold * i_fc + m.igbt_resistance * i_fc * i_fc);
    out.diode_conduction = (1.0 - duty) * (m.diode_threshold * i_fc + m.diode_resistance * i_fc * i_fc);
    out.igbt_switching = (m.turn_on_energy + m.turn_off_energy) * per_energy;
    out.diode_recovery = m.recovery_energy * per_energy;
    out.inductor_copper = i_fc * i_fc * bp.inductor_resistance;
    return out;
}

namespace {

// Composite Simpson nodes on the conducting half period [0, pi]; weights
// already divided by 2 pi so the sums are means over a full period.
struct HalfPeriodNodes {
    std::vector<double> weight, sine, cosine;

    explicit HalfPeriodNodes(int intervals) {
        const int n = intervals + 1;
        const double h = pi / intervals;
        weight.resize(n);
        sine.resize(n);
        cosine.resize(n);
        for (int k = 0; k < n; ++k) {
            const double theta = k * h;
            const double simpson = (k == 0 || k == intervals) ? 1.0 : (k % 2 ? 4.0 : 2.0);
            weight[k] = simpson * h / 3.0 / (2.0 * pi);
            sine[k] = std::sin(theta);
            cosine[k] = std::cos(theta);
        }
    }
};

}  // namespace

DeviceLoss conduction_loss_oracle(const InverterConditions& c, const PowerModuleParams& mod) {
    static const HalfPeriodNodes nodes(8192);
    const double phi = std::acos(std::clamp(c.displacement, -1.0, 1.0));
    kernels::ConductionCoeffs k;
    k.current_peak = c.current_peak;
    k.modulation = c.modulation;
    k.cos_phi = c.displacement;
    k.sin_phi = std::sin(phi);
    k.igbt_threshold = mod.igbt_threshold;
    k.igbt_resistance = mod.igbt_resistance;
    k.diode_threshold = mod.diode_threshold;
    k.diode_resistance = mod.diode_resistance;
    const auto sums = kernels::active().conduction_quadrature(
        nodes.weight.data(), nodes.sine.data(), nodes.cosine.data(), nodes.weight.size(), k);
    return {sums.igbt, sums.diode, false};
}

}  // namespace fcev
