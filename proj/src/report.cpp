#include "fcev/report.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fcev/error.hpp"
#include "text.hpp"

namespace fcev {

using nlohmann::ordered_json;

namespace {

ordered_json converter_json(const ConverterLoss& c) {
    return {{"igbt_conduction_W", c.igbt_conduction}, {"diode_conduction_W", c.diode_conduction},
            {"igbt_switching_W", c.igbt_switching},   {"diode_recovery_W", c.diode_recovery},
            {"inductor_copper_W", c.inductor_copper}, {"total_W", c.total()}};
}

ordered_json breakdown_json(const LossBreakdown& b) {
    ordered_json j = ordered_json::object();
    for (Converter c : all_converters) {
        if (b.has(c)) j[to_string(c)] = converter_json(b.get(c));
    }
    j["motor_copper_W"] = b.motor_copper;
    j["converters_W"] = b.converters_total();
    j["total_W"] = b.total();
    return j;
}

std::string fmt(double v, int precision = 2) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << v;
    return s.str();
}

}  // namespace

PointAnalysis analyze_point(const TopologyConfig& cfg, double fc_power, double electrical_speed,
                            std::optional<double> shaft_power) {
    PointAnalysis a;
    a.kind = cfg.kind;
    a.fc_power = fc_power;
    a.electrical_speed = electrical_speed;
    a.shaft_power = shaft_power.value_or(fc_power);
    a.result = evaluate_point(cfg, a.shaft_power, electrical_speed, fc_power);
    return a;
}

double loss_ratio(const PointResult& conventional, const PointResult& dual) {
    const double d = dual.losses.total();
    if (!(d > 0.0)) throw Error(Errc::zero_energy, "dual-drive loss is zero; ratio undefined");
    return conventional.losses.total() / d;
}

namespace {

const PointAnalysis* find_kind(const std::vector<PointAnalysis>& points, TopologyKind k) {
    for (const auto& p : points) {
        if (p.kind == k) return &p;
    }
    return nullptr;
}

std::optional<double> ratio_of(const std::vector<PointAnalysis>& points) {
    const auto* d = find_kind(points, TopologyKind::dual_inverter);
    const auto* c = find_kind(points, TopologyKind::conventional);
    if (!d || !c || !(d->result.losses.total() > 0.0)) return std::nullopt;
    return loss_ratio(c->result, d->result);
}

}  // namespace

void write_point_text(std::ostream& out, const std::vector<PointAnalysis>& points) {
    for (const auto& p : points) {
        const auto& r = p.result;
        out << to_string(p.kind) << ": P_fc = " << fmt(p.fc_power, 0) << " W, P_ac = " << fmt(p.shaft_power, 0)
            << " W, w_e = " << fmt(p.electrical_speed, 1) << " rad/s\n";
        out << "  i_dq = (" << fmt(r.op.current.d) << ", " << fmt(r.op.current.q) << ") A, v_dq = ("
            << fmt(r.op.voltage.d) << ", " << fmt(r.op.voltage.q) << ") V\n";
        out << "  " << std::left << std::setw(20) << "converter" << std::right << std::setw(12) << "igbt_cond"
            << std::setw(12) << "diode_cond" << std::setw(12) << "igbt_sw" << std::setw(12) << "diode_rec"
            << std::setw(12) << "inductor" << std::setw(12) << "total" << '\n';
        for (Converter c : all_converters) {
            if (!r.losses.has(c)) continue;
            const auto& l = r.losses.get(c);
            out << "  " << std::left << std::setw(20) << to_string(c) << std::right << std::setw(12)
                << fmt(l.igbt_conduction) << std::setw(12) << fmt(l.diode_conduction) << std::setw(12)
                << fmt(l.igbt_switching) << std::setw(12) << fmt(l.diode_recovery) << std::setw(12)
                << fmt(l.inductor_copper) << std::setw(12) << fmt(l.total()) << '\n';
        }
        out << "  motor copper " << fmt(r.losses.motor_copper) << " W, total " << fmt(r.losses.total()) << " W\n";
    }
    if (auto ratio = ratio_of(points)) out << "conventional / dual total loss: " << fmt(*ratio, 4) << '\n';
}

std::string point_json(const std::vector<PointAnalysis>& points) {
    ordered_json j;
    j["points"] = ordered_json::array();
    for (const auto& p : points) {
        const auto& r = p.result;
        ordered_json e;
        e["topology"] = to_string(p.kind);
        e["fc_power_W"] = p.fc_power;
        e["shaft_power_W"] = p.shaft_power;
        e["electrical_speed_rad_s"] = p.electrical_speed;
        e["current_dq_A"] = {r.op.current.d, r.op.current.q};
        e["voltage_dq_V"] = {r.op.voltage.d, r.op.voltage.q};
        if (r.split) {
            e["fc_bridge_voltage_dq_V"] = {r.split->fc_voltage.d, r.split->fc_voltage.q};
            e["battery_bridge_voltage_dq_V"] = {r.split->battery_voltage.d, r.split->battery_voltage.q};
        }
        e["fc_voltage_V"] = r.fc_voltage;
        e["fc_current_A"] = r.fc_current;
        e["dc_power_W"] = r.dc_power;
        e["battery_power_W"] = r.battery_power;
        e["losses"] = breakdown_json(r.losses);
        j["points"].push_back(e);
    }
    if (auto ratio = ratio_of(points)) j["loss_ratio_conventional_over_dual"] = *ratio;
    return j.dump(2) + "\n";
}

void write_cycle_csv(std::ostream& out, const CycleResult& r) {
    out << "time_s,speed_mps,P_ac_W,P_dc_W,P_fc_ref_W,P_fc_W,P_bat_W,P_out_W,i_d_A,i_q_A,fc_adjusted,"
           "loss_igbt_cond_W,loss_diode_cond_W,loss_igbt_sw_W,loss_diode_rec_W,loss_inductor_W,"
           "loss_converters_W,loss_motor_W,loss_total_W\n";
    for (const auto& s : r.samples) {
        const auto& l = s.losses;
        const double cols[] = {s.time,           s.speed,           s.shaft_power,        s.dc_power,
                               s.fc_reference,   s.fc_power,        s.battery_power,      s.output_power,
                               s.d_current,      s.q_current};
        for (double c : cols) out << text::format_double(c) << ',';
        out << (s.fc_adjusted ? 1 : 0);
        const double losses[] = {l.igbt_conduction(), l.diode_conduction(), l.igbt_switching(), l.diode_recovery(),
                                 l.inductor_copper(), l.converters_total(), l.motor_copper,     l.total()};
        for (double c : losses) out << ',' << text::format_double(c);
        out << '\n';
    }
}

namespace {

ordered_json cycle_object(const CycleResult& r) {
    double peak_conv = 0.0, peak_motor = 0.0, peak_total = 0.0;
    for (const auto& s : r.samples) {
        peak_conv = std::max(peak_conv, s.losses.converters_total());
        peak_motor = std::max(peak_motor, s.losses.motor_copper);
        peak_total = std::max(peak_total, s.losses.total());
    }
    ordered_json j;
    j["cycle"] = r.cycle_name;
    j["topology"] = to_string(r.kind);
    j["samples"] = r.samples.size();
    j["duration_s"] = r.samples.empty() ? 0.0 : r.samples.back().time - r.samples.front().time;
    j["energies_J"] = {{"output", r.energies.output},
                       {"loss_inverter", r.energies.loss_inverter},
                       {"loss_motor", r.energies.loss_motor}};
    j["efficiency"] = r.efficiency;
    j["zero_energy"] = r.zero_energy;
    j["fc_adjusted_samples"] = r.fc_adjusted_samples;
    j["fc_constraints"] = {{"passed", r.fc_report.passed()},
                           {"min_power_W", r.fc_report.min_power},
                           {"max_slew_W_per_s", r.fc_report.max_slew}};
    j["peak_losses_W"] = {{"converters", peak_conv}, {"motor", peak_motor}, {"total", peak_total}};
    return j;
}

}  // namespace

std::string cycle_summary_json(const CycleResult& r) { return cycle_object(r).dump(2) + "\n"; }

void write_cycle_text(std::ostream& out, const std::vector<CycleResult>& runs) {
    out << std::left << std::setw(12) << "cycle" << std::setw(14) << "topology" << std::right << std::setw(12)
        << "eta_E %" << std::setw(16) << "output kWh" << std::setw(16) << "conv loss kWh" << std::setw(16)
        << "motor loss kWh" << std::setw(10) << "fc ok" << '\n';
    for (const auto& r : runs) {
        out << std::left << std::setw(12) << r.cycle_name << std::setw(14) << to_string(r.kind) << std::right
            << std::setw(12) << fmt(100.0 * r.efficiency) << std::setw(16) << fmt(r.energies.output / 3.6e6, 4)
            << std::setw(16) << fmt(r.energies.loss_inverter / 3.6e6, 4) << std::setw(16)
            << fmt(r.energies.loss_motor / 3.6e6, 4) << std::setw(10) << (r.fc_report.passed() ? "yes" : "no")
            << '\n';
    }
}

std::string cycle_comparison_json(const std::vector<CycleResult>& runs) {
    ordered_json j;
    j["runs"] = ordered_json::array();
    std::map<std::string, std::pair<const CycleResult*, const CycleResult*>> by_cycle;
    std::vector<std::string> order;
    for (const auto& r : runs) {
        j["runs"].push_back(cycle_object(r));
        if (!by_cycle.count(r.cycle_name)) order.push_back(r.cycle_name);
        auto& slot = by_cycle[r.cycle_name];
        (r.kind == TopologyKind::dual_inverter ? slot.first : slot.second) = &r;
    }
    ordered_json deltas = ordered_json::object();
    for (const auto& name : order) {
        const auto& [d, c] = by_cycle[name];
        if (d && c) deltas[name] = d->efficiency - c->efficiency;
    }
    if (!deltas.empty()) j["efficiency_delta_dual_minus_conventional"] = deltas;
    return j.dump(2) + "\n";
}

namespace {

ordered_json dq_json(Dq x) { return ordered_json::array({x.d, x.q}); }

}  // namespace

std::string simulation_json(const SimulationSummary& s, const SimWaveforms& w) {
    ordered_json j;
    j["topology"] = to_string(s.analytical.kind);
    j["fc_power_W"] = s.analytical.fc_power;
    j["electrical_speed_rad_s"] = s.analytical.electrical_speed;
    j["dt_s"] = w.dt;
    j["samples"] = w.size();
    j["measured_duration_s"] = w.measured_duration;
    j["voltage_levels"] = s.levels;
    j["current_fundamental_dq_A"] = dq_json(w.current_fundamental);
    j["commanded_current_dq_A"] = dq_json(w.commanded_current);
    j["bridge_fundamental_dq_V"] = {dq_json(w.bridge_fundamental[0]), dq_json(w.bridge_fundamental[1])};
    j["commanded_bridge_voltage_dq_V"] = {dq_json(w.commanded_bridge_voltage[0]),
                                          dq_json(w.commanded_bridge_voltage[1])};
    j["energies_J"] = {{"dc", w.dc_energy},
                       {"terminal", w.terminal_energy},
                       {"bridge_conduction", w.bridge_conduction_energy},
                       {"switching", w.switching_energy},
                       {"fc", w.fc_energy},
                       {"boost_output", w.boost_output_energy}};
    j["simulated_losses"] = breakdown_json(w.losses);
    j["analytical_losses"] = breakdown_json(s.analytical.result.losses);
    ordered_json rows = ordered_json::array();
    for (const auto& r : s.comparison.rows) {
        rows.push_back({{"category", r.category},
                        {"simulated_W", r.simulated},
                        {"analytical_W", r.analytical},
                        {"deviation", r.deviation},
                        {"threshold", r.threshold},
                        {"passed", r.passed()}});
    }
    j["comparison"] = rows;
    j["comparison_passed"] = s.comparison.passed();
    return j.dump(2) + "\n";
}

void write_simulation_text(std::ostream& out, const SimulationSummary& s, const SimWaveforms& w) {
    out << to_string(s.analytical.kind) << " switched simulation: " << w.size() << " samples, dt = "
        << text::format_double(w.dt) << " s\n";
    out << "  voltage levels: " << s.levels << '\n';
    out << "  current fundamental (" << fmt(w.current_fundamental.d) << ", " << fmt(w.current_fundamental.q)
        << ") A, commanded (" << fmt(w.commanded_current.d) << ", " << fmt(w.commanded_current.q) << ") A\n";
    out << "  " << std::left << std::setw(18) << "category" << std::right << std::setw(12) << "simulated"
        << std::setw(12) << "analytical" << std::setw(11) << "deviation" << std::setw(8) << "limit" << '\n';
    for (const auto& r : s.comparison.rows) {
        out << "  " << std::left << std::setw(18) << r.category << std::right << std::setw(12) << fmt(r.simulated)
            << std::setw(12) << fmt(r.analytical) << std::setw(10) << fmt(100.0 * r.deviation) << '%'
            << std::setw(7) << fmt(100.0 * r.threshold, 0) << '%' << (r.passed() ? "" : "  FAIL") << '\n';
    }
}

}  // namespace fcev
