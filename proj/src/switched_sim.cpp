#include "fcev/switched_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "fcev/error.hpp"
#include "text.hpp"

namespace fcev {

using std::numbers::pi;

namespace {

constexpr double kTwoThirdsPi = 2.0 * pi / 3.0;
constexpr int kMinStepsPerCarrier = 100;

enum Device { t_upper = 0, d_upper = 1, t_lower = 2, d_lower = 3 };
constexpr const char* kDeviceNames[] = {"T+", "D+", "T-", "D-"};
constexpr const char* kPhaseNames[] = {"a", "b", "c"};

double phase_value(Dq x, double theta) noexcept { return x.d * std::cos(theta) - x.q * std::sin(theta); }

struct Toggle {
    double time;
    int leg;  // 0-5 bridge legs, 6 boost
    bool on;
};

// Gate toggles of one triangle-carrier PWM leg. The carrier rises over even
// half periods and falls over odd ones; the duty is held per half period at
// the reference value sampled mid-way through it.
template <class Duty>
bool carrier_toggles(double period, double shift, double t_end, int leg, Duty&& duty, std::vector<Toggle>& out) {
    const double half = 0.5 * period;
    const double eps = 1e-9 * half;
    std::vector<std::pair<double, double>> on;
    for (long h = static_cast<long>(std::floor(-shift / half)); ; ++h) {
        const double t0 = shift + static_cast<double>(h) * half;
        if (t0 >= t_end) break;
        const double d = std::clamp(duty(t0 + 0.5 * half), 0.0, 1.0);
        const bool rising = ((h % 2) + 2) % 2 == 0;
        const double a = rising ? t0 : t0 + (1.0 - d) * half;
        const double b = rising ? t0 + d * half : t0 + half;
        if (b - a <= eps) continue;
        if (!on.empty() && std::abs(a - on.back().second) <= eps) {
            on.back().second = b;
        } else {
            on.emplace_back(a, b);
        }
    }
    bool initial = false;
    for (const auto& [a, b] : on) {
        if (b <= 0.0) continue;
        if (a <= 0.0) {
            initial = true;
        } else if (a < t_end) {
            out.push_back({a, leg, true});
        }
        if (b < t_end) out.push_back({b, leg, false});
    }
    return initial;
}

class Simulator {
public:
    explicit Simulator(const SimConfig& cfg) : cfg_(cfg) {
        dual_ = cfg.kind == TopologyKind::dual_inverter;
        legs_ = dual_ ? 6 : 3;
        has_boost_ = !dual_ && cfg.boost.has_value() && cfg.fc_current > 0.0;
        const Dq bridge2 = cfg.voltage - cfg.bridge1_voltage;
        refs_[0] = dual_ ? cfg.bridge1_voltage : cfg.voltage;
        refs_[1] = bridge2;
        vdc_[0] = cfg.dc_voltage_1;
        vdc_[1] = cfg.dc_voltage_2;

        const Converter c1 = dual_ ? Converter::fc_inverter : Converter::traction_inverter;
        for (int leg = 0; leg < legs_; ++leg) {
            const char* conv = to_string(leg < 3 ? c1 : Converter::battery_inverter);
            for (int dev = 0; dev < 4; ++dev) {
                devices_.push_back({std::string(conv) + "." + kPhaseNames[leg % 3] + "." + kDeviceNames[dev]});
            }
        }
        if (has_boost_) {
            devices_.push_back({"boost.T"});
            devices_.push_back({"boost.D"});
        }
    }

    SimWaveforms run();

private:
    double leg_current(int leg) const noexcept { return leg < 3 ? i_[leg] : -i_[leg - 3]; }

    void build_events(double t_end);
    void integrate(double t0, double t1);
    void evaluate(double t);
    void toggle(const Toggle& e);
    void record(double t, SimWaveforms& w);
    double fc_voltage(double i) const;

    const SimConfig& cfg_;
    bool dual_ = false;
    bool has_boost_ = false;
    int legs_ = 3;
    std::array<Dq, 2> refs_{};
    std::array<double, 2> vdc_{};
    double boost_duty_ = 0.0;

    std::vector<Toggle> events_;
    std::array<bool, 7> gate_{};
    std::array<double, 3> i_{};
    double i_boost_ = 0.0;
    double measure_from_ = 0.0;

    // Scratch filled by evaluate().
    std::array<double, 6> w_{};       // leg voltages to the negative rail
    std::array<double, 6> drop_{};
    std::array<int, 6> device_{};     // -1 when no current
    std::array<double, 3> u_{};       // winding voltages
    std::array<double, 3> emf_{};
    double boost_node_ = 0.0;
    double boost_drop_ = 0.0;
    int boost_device_ = -1;

    std::vector<DeviceAccount> devices_;
    double dc_energy_ = 0.0, terminal_energy_ = 0.0, bridge_cond_ = 0.0;
    double fc_energy_ = 0.0, boost_out_ = 0.0, inductor_ = 0.0, copper_ = 0.0;
    std::array<double, 2> fund_i_{};
    std::array<std::array<double, 2>, 2> fund_v_{};
};

double Simulator::fc_voltage(double i) const {
    return cfg_.fuel_cell.voltage_at_current(std::min(i, cfg_.fuel_cell.max_current()));
}

void Simulator::build_events(double t_end) {
    const double period = 1.0 / cfg_.switching_frequency;
    const double we = cfg_.electrical_speed;
    for (int leg = 0; leg < legs_; ++leg) {
        const int bridge = leg / 3;
        const double offset = kTwoThirdsPi * (leg % 3);
        const double sign = bridge == 0 ? 1.0 : -1.0;
        const Dq ref = refs_[bridge];
        const double vdc = vdc_[bridge];
        auto duty = [&](double t) { return 0.5 + sign * phase_value(ref, we * t - offset) / vdc; };
        const double shift = bridge == 0 ? 0.0 : cfg_.carrier_shift * period;
        gate_[leg] = carrier_toggles(period, shift, t_end, leg, duty, events_);
    }
    if (has_boost_) {
        const auto& bp = *cfg_.boost;
        const auto& m = bp.module;
        const double i = cfg_.fc_current;
        const double vfc = fc_voltage(i);
        const double dt_t = m.igbt_threshold + m.igbt_resistance * i;
        const double dd = m.diode_threshold + m.diode_resistance * i;
        const double bus = vdc_[0];
        boost_duty_ = std::clamp((bus + dd - vfc + bp.inductor_resistance * i) / (bus + dd - dt_t), 0.0, 1.0);
        gate_[6] = carrier_toggles(1.0 / bp.switching_frequency, 0.0, t_end, 6,
                                   [&](double) { return boost_duty_; }, events_);
    }
    std::stable_sort(events_.begin(), events_.end(),
                     [](const Toggle& a, const Toggle& b) { return a.time < b.time; });
}

void Simulator::evaluate(double t) {
    const auto& m = cfg_.module;
    for (int leg = 0; leg < legs_; ++leg) {
        const double i = leg_current(leg);
        const bool s = gate_[leg];
        const double v = s ? vdc_[leg / 3] : 0.0;
        if (i == 0.0) {
            device_[leg] = -1;
            drop_[leg] = 0.0;
            w_[leg] = v;
            continue;
        }
        const bool igbt = s == (i > 0.0);
        device_[leg] = s ? (i > 0.0 ? t_upper : d_upper) : (i > 0.0 ? d_lower : t_lower);
        drop_[leg] = igbt ? m.igbt_threshold + m.igbt_resistance * std::abs(i)
                          : m.diode_threshold + m.diode_resistance * std::abs(i);
        w_[leg] = v - std::copysign(drop_[leg], i);
    }
    std::array<double, 3> x{};
    for (int k = 0; k < 3; ++k) x[k] = dual_ ? w_[k] - w_[k + 3] : w_[k];
    const double mean = (x[0] + x[1] + x[2]) / 3.0;
    const double theta = cfg_.electrical_speed * t;
    const double e_pk = cfg_.electrical_speed * cfg_.motor.flux_linkage;
    for (int k = 0; k < 3; ++k) {
        u_[k] = x[k] - mean;
        emf_[k] = -e_pk * std::sin(theta - kTwoThirdsPi * k);
    }
    if (has_boost_) {
        const auto& bm = cfg_.boost->module;
        const double i = i_boost_;
        if (gate_[6]) {
            boost_device_ = i > 0.0 ? 0 : -1;
            boost_drop_ = i > 0.0 ? bm.igbt_threshold + bm.igbt_resistance * i : 0.0;
            boost_node_ = boost_drop_;
        } else if (i > 0.0) {
            boost_device_ = 1;
            boost_drop_ = bm.diode_threshold + bm.diode_resistance * i;
            boost_node_ = vdc_[0] + boost_drop_;
        } else {
            boost_device_ = -1;
            boost_drop_ = 0.0;
            boost_node_ = fc_voltage(0.0);
        }
    }
}

void Simulator::integrate(double t0, double t1) {
    if (t1 <= t0) return;
    if (t0 < measure_from_ && t1 > measure_from_) {
        integrate(t0, measure_from_);
        integrate(measure_from_, t1);
        return;
    }
    const double h = t1 - t0;
    evaluate(t0);
    const bool measuring = t0 >= measure_from_;
    const auto& mp = cfg_.motor;

    if (measuring) {
        for (int leg = 0; leg < legs_; ++leg) {
            const double i = leg_current(leg);
            if (gate_[leg]) dc_energy_ += vdc_[leg / 3] * i * h;
            if (device_[leg] >= 0) {
                const double e = drop_[leg] * std::abs(i) * h;
                devices_[4 * leg + device_[leg]].conduction += e;
                bridge_cond_ += e;
            }
        }
        const double theta = cfg_.electrical_speed * (t0 + 0.5 * h);
        const double c = std::cos(theta) * h;
        const double s = std::sin(theta) * h;
        for (int k = 0; k < 3; ++k) {
            terminal_energy_ += u_[k] * i_[k] * h;
            copper_ += mp.resistance * i_[k] * i_[k] * h;
        }
        fund_i_[0] += i_[0] * c;
        fund_i_[1] += i_[0] * s;
        for (int b = 0; b < (dual_ ? 2 : 1); ++b) {
            const double mean = (w_[3 * b] + w_[3 * b + 1] + w_[3 * b + 2]) / 3.0;
            const double contribution = (b == 0 ? 1.0 : -1.0) * (w_[3 * b] - mean);
            fund_v_[b][0] += contribution * c;
            fund_v_[b][1] += contribution * s;
        }
    }

    std::array<double, 3> di{};
    for (int k = 0; k < 3; ++k) di[k] = (u_[k] - mp.resistance * i_[k] - emf_[k]) / mp.inductance * h;
    for (int k = 0; k < 3; ++k) i_[k] += di[k];

    if (has_boost_) {
        const auto& bp = *cfg_.boost;
        const double i = i_boost_;
        const double vfc = fc_voltage(i);
        if (measuring) {
            fc_energy_ += vfc * i * h;
            inductor_ += bp.inductor_resistance * i * i * h;
            if (boost_device_ >= 0) devices_[4 * legs_ + boost_device_].conduction += boost_drop_ * i * h;
            if (!gate_[6]) boost_out_ += vdc_[0] * i * h;
        }
        const double next = i + (vfc - bp.inductor_resistance * i - boost_node_) / bp.inductance * h;
        i_boost_ = std::max(next, 0.0);
    }
}

void Simulator::toggle(const Toggle& e) {
    const bool measuring = e.time >= measure_from_;
    if (e.leg == 6) {
        const auto& m = cfg_.boost->module;
        const double scale = i_boost_ / m.nominal_current * vdc_[0] / m.nominal_voltage;
        if (measuring && i_boost_ > 0.0) {
            auto& igbt = devices_[4 * legs_];
            auto& diode = devices_[4 * legs_ + 1];
            if (e.on) {
                igbt.switching += m.turn_on_energy * scale;
                diode.switching += m.recovery_energy * scale;
                ++diode.events;
            } else {
                igbt.switching += m.turn_off_energy * scale;
            }
            ++igbt.events;
        }
        gate_[6] = e.on;
        return;
    }
    const auto& m = cfg_.module;
    const double i = leg_current(e.leg);
    const double scale = std::abs(i) / m.nominal_current * vdc_[e.leg / 3] / m.nominal_voltage;
    if (measuring && i != 0.0) {
        auto* dev = &devices_[4 * e.leg];
        // Current > 0 commutates between T+ and D-, current < 0 between T- and D+.
        if (i > 0.0) {
            dev[t_upper].switching += (e.on ? m.turn_on_energy : m.turn_off_energy) * scale;
            ++dev[t_upper].events;
            if (e.on) {
                dev[d_lower].switching += m.recovery_energy * scale;
                ++dev[d_lower].events;
            }
        } else {
            dev[t_lower].switching += (e.on ? m.turn_off_energy : m.turn_on_energy) * scale;
            ++dev[t_lower].events;
            if (!e.on) {
                dev[d_upper].switching += m.recovery_energy * scale;
                ++dev[d_upper].events;
            }
        }
    }
    gate_[e.leg] = e.on;
}

void Simulator::record(double t, SimWaveforms& w) {
    evaluate(t);
    w.time.push_back(t);
    std::uint16_t mask = 0;
    for (int k = 0; k < 3; ++k) {
        w.phase_current[k].push_back(i_[k]);
        w.phase_voltage[k].push_back(u_[k]);
    }
    for (int leg = 0; leg < legs_; ++leg) {
        mask |= static_cast<std::uint16_t>((device_[leg] < 0 ? 0 : device_[leg]) << (2 * leg));
    }
    if (has_boost_) {
        w.boost_current.push_back(i_boost_);
        mask |= static_cast<std::uint16_t>((boost_device_ == 1 ? 1 : 0) << 12);
    }
    w.conducting.push_back(mask);
}

SimWaveforms Simulator::run() {
    const std::size_t n = static_cast<std::size_t>(std::ceil(cfg_.duration / cfg_.dt - 1e-9));
    const double dt = cfg_.duration / static_cast<double>(n);
    measure_from_ = cfg_.settle_time;
    build_events(cfg_.duration);

    const Dq i0 = cfg_.initial_current.value_or(cfg_.current);
    for (int k = 0; k < 3; ++k) i_[k] = phase_value(i0, -kTwoThirdsPi * k);
    i_boost_ = has_boost_ ? cfg_.fc_current : 0.0;
    const double limit = 20.0 * (i0.magnitude() + cfg_.current.magnitude() + cfg_.module.nominal_current);

    SimWaveforms w;
    w.kind = cfg_.kind;
    w.dt = dt;
    w.fundamental_frequency = cfg_.fundamental_frequency();
    w.measured_duration = cfg_.duration - cfg_.settle_time;
    for (auto* v : {&w.time}) v->reserve(n);
    for (int k = 0; k < 3; ++k) {
        w.phase_current[k].reserve(n);
        w.phase_voltage[k].reserve(n);
    }
    w.conducting.reserve(n);

    std::size_t next = 0;
    double t = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        while (next < events_.size() && events_[next].time <= t) toggle(events_[next++]);
        record(t, w);
        if (t < cfg_.settle_time) ++w.settle_samples;
        const double t_end = step + 1 == n ? cfg_.duration : static_cast<double>(step + 1) * dt;
        while (next < events_.size() && events_[next].time < t_end) {
            integrate(t, events_[next].time);
            t = events_[next].time;
            while (next < events_.size() && events_[next].time <= t) toggle(events_[next++]);
        }
        integrate(t, t_end);
        t = t_end;
        for (double i : i_) {
            if (!std::isfinite(i) || std::abs(i) > limit) {
                throw Error(Errc::unstable_integration,
                            "phase current diverged at t = " + text::format_double(t) + " s; reduce the time step",
                            step);
            }
        }
        if (!std::isfinite(i_boost_) || i_boost_ > limit) {
            throw Error(Errc::unstable_integration, "boost current diverged; reduce the time step", step);
        }
    }

    const double span = w.measured_duration;
    ConverterLoss bridge[2];
    ConverterLoss boost;
    for (std::size_t k = 0; k < devices_.size(); ++k) {
        const auto& d = devices_[k];
        w.switching_energy += d.switching;
        const bool in_boost = static_cast<int>(k) >= 4 * legs_;
        const bool igbt = in_boost ? k == static_cast<std::size_t>(4 * legs_) : (k % 4 == t_upper || k % 4 == t_lower);
        ConverterLoss& c = in_boost ? boost : bridge[static_cast<int>(k) / 12];
        (igbt ? c.igbt_conduction : c.diode_conduction) += d.conduction / span;
        (igbt ? c.igbt_switching : c.diode_recovery) += d.switching / span;
    }
    if (dual_) {
        w.losses.set(Converter::fc_inverter, bridge[0]);
        w.losses.set(Converter::battery_inverter, bridge[1]);
    } else {
        w.losses.set(Converter::traction_inverter, bridge[0]);
        if (has_boost_) {
            boost.inductor_copper = inductor_ / span;
            w.losses.set(Converter::boost, boost);
        }
    }
    w.losses.motor_copper = copper_ / span;
    w.devices = std::move(devices_);
    w.dc_energy = dc_energy_;
    w.terminal_energy = terminal_energy_;
    w.bridge_conduction_energy = bridge_cond_;
    w.fc_energy = fc_energy_;
    w.boost_output_energy = boost_out_;

    const double g = 2.0 / span;
    w.current_fundamental = {g * fund_i_[0], -g * fund_i_[1]};
    for (int b = 0; b < 2; ++b) w.bridge_fundamental[b] = {g * fund_v_[b][0], -g * fund_v_[b][1]};
    w.commanded_current = cfg_.current;
    w.commanded_voltage = cfg_.voltage;
    w.commanded_bridge_voltage = {refs_[0], dual_ ? refs_[1] : Dq{}};
    return w;
}

}  // namespace

double SimConfig::fundamental_frequency() const noexcept { return electrical_speed / (2.0 * pi); }

void SimConfig::validate() const {
    motor.validate();
    module.validate();
    if (!(switching_frequency > 0.0)) throw Error(Errc::config_error, "switching frequency must be positive");
    if (!(dt > 0.0)) throw Error(Errc::config_error, "time step must be positive");
    double fastest = switching_frequency;
    if (boost) {
        boost->validate();
        fastest = std::max(fastest, boost->switching_frequency);
    }
    if (dt > 1.0 / (kMinStepsPerCarrier * fastest)) {
        throw Error(Errc::unstable_integration, "time step " + text::format_double(dt) + " s exceeds 1/(100 f_sw); reduce the time step");
    }
    if (!(electrical_speed >= 0.0)) throw Error(Errc::config_error, "electrical speed must be non-negative");
    if (!(duration > 0.0) || !(settle_time >= 0.0) || !(settle_time < duration)) {
        throw Error(Errc::config_error, "need 0 <= settle time < duration");
    }
    if (electrical_speed > 0.0 && duration * fundamental_frequency() < 2.0 - 1e-9) {
        throw Error(Errc::config_error, "duration must cover at least two fundamental periods");
    }
    if (!(dc_voltage_1 > 0.0)) throw Error(Errc::config_error, "bridge DC voltage must be positive");
    if (kind == TopologyKind::dual_inverter) {
        if (!(dc_voltage_2 > 0.0)) throw Error(Errc::config_error, "battery bridge DC voltage must be positive");
        if (boost) throw Error(Errc::config_error, "dual-inverter topology has no boost converter");
    }
    if (!(carrier_shift >= 0.0) || carrier_shift >= 1.0) {
        throw Error(Errc::config_error, "carrier shift must be in [0, 1)");
    }
    if (!(fc_current >= 0.0)) throw Error(Errc::config_error, "fuel-cell current must be non-negative");
}

SimConfig make_sim_config(const TopologyConfig& cfg, const PointResult& point, const SimOptions& options) {
    if (!(point.op.electrical_speed > 0.0)) {
        throw Error(Errc::config_error, "switched simulation needs a positive electrical speed");
    }
    if (options.settle_periods < 0 || options.measured_periods < 1 || options.settle_periods + options.measured_periods < 2) {
        throw Error(Errc::config_error, "simulation needs at least two fundamental periods");
    }
    SimConfig s;
    s.kind = cfg.kind;
    s.motor = cfg.motor;
    s.electrical_speed = point.op.electrical_speed;
    s.current = point.op.current;
    s.voltage = point.op.voltage;
    s.module = cfg.inverter_module;
    s.switching_frequency = cfg.switching_frequency;
    s.fuel_cell = cfg.fuel_cell;
    double fastest = cfg.switching_frequency;
    if (cfg.kind == TopologyKind::dual_inverter) {
        if (!point.split) throw Error(Errc::config_error, "dual-inverter point has no voltage split");
        s.bridge1_voltage = point.split->fc_voltage;
        s.dc_voltage_1 = point.fc_voltage;
        s.dc_voltage_2 = cfg.battery_voltage;
    } else {
        s.bridge1_voltage = point.op.voltage;
        s.dc_voltage_1 = cfg.battery_voltage;
        s.boost = cfg.boost;
        s.fc_current = point.fc_current;
        if (cfg.boost) fastest = std::max(fastest, cfg.boost->switching_frequency);
    }
    const double period = 1.0 / s.fundamental_frequency();
    s.dt = 1.0 / (options.steps_per_carrier * fastest);
    s.settle_time = options.settle_periods * period;
    s.duration = (options.settle_periods + options.measured_periods) * period;
    return s;
}

SimWaveforms run_switched(const SimConfig& cfg) {
    cfg.validate();
    Simulator sim(cfg);
    return sim.run();
}

int count_levels(const std::vector<double>& samples, double tolerance, double min_share) {
    if (samples.empty()) return 0;
    std::vector<double> v(samples);
    std::sort(v.begin(), v.end());
    const double min_count = min_share * static_cast<double>(v.size());
    int levels = 0;
    std::size_t start = 0;
    for (std::size_t k = 1; k <= v.size(); ++k) {
        if (k == v.size() || v[k] - v[k - 1] > tolerance) {
            if (static_cast<double>(k - start) >= min_count) ++levels;
            start = k;
        }
    }
    return std::max(levels, 1);
}

int count_voltage_levels(const SimWaveforms& w, double tolerance, double min_share, int phase) {
    if (phase < 0 || phase > 2) throw Error(Errc::domain_error, "phase index must be 0, 1 or 2");
    const auto& v = w.phase_voltage[phase];
    if (v.empty()) throw Error(Errc::domain_error, "waveform is empty");
    const std::size_t from = w.settle_samples < v.size() ? w.settle_samples : 0;
    return count_levels(std::vector<double>(v.begin() + static_cast<long>(from), v.end()), tolerance, min_share);
}

bool ComparisonReport::passed() const noexcept {
    return std::all_of(rows.begin(), rows.end(), [](const ComparisonRow& r) { return r.passed(); });
}

const ComparisonRow* ComparisonReport::find(const std::string& category) const noexcept {
    for (const auto& r : rows) {
        if (r.category == category) return &r;
    }
    return nullptr;
}

ComparisonReport compare_to_analytical(const LossBreakdown& sim, const LossBreakdown& ana) {
    constexpr double conduction = 0.10;
    constexpr double switching = 0.20;
    constexpr double total = 0.15;
    ComparisonReport r;
    auto add = [&](const char* name, double s, double a, double threshold) {
        if (s == 0.0 && a == 0.0) return;
        ComparisonRow row{name, s, a, 0.0, threshold};
        row.deviation = a != 0.0 ? (s - a) / a : std::copysign(INFINITY, s);
        r.rows.push_back(row);
    };
    add("igbt_conduction", sim.igbt_conduction(), ana.igbt_conduction(), conduction);
    add("diode_conduction", sim.diode_conduction(), ana.diode_conduction(), conduction);
    add("conduction", sim.igbt_conduction() + sim.diode_conduction(),
        ana.igbt_conduction() + ana.diode_conduction(), conduction);
    add("inductor_copper", sim.inductor_copper(), ana.inductor_copper(), conduction);
    add("motor_copper", sim.motor_copper, ana.motor_copper, conduction);
    add("igbt_switching", sim.igbt_switching(), ana.igbt_switching(), switching);
    add("diode_recovery", sim.diode_recovery(), ana.diode_recovery(), switching);
    add("switching", sim.igbt_switching() + sim.diode_recovery(), ana.igbt_switching() + ana.diode_recovery(),
        switching);
    add("total", sim.total(), ana.total(), total);
    return r;
}

ComparisonReport compare_to_analytical(const SimWaveforms& w, const LossBreakdown& analytical) {
    return compare_to_analytical(w.losses, analytical);
}

void write_waveform_csv(std::ostream& out, const SimWaveforms& w, std::size_t stride) {
    if (stride == 0) stride = 1;
    const bool boost = !w.boost_current.empty();
    out << "time_s,i_a_A,i_b_A,i_c_A,v_a_V,v_b_V,v_c_V" << (boost ? ",i_boost_A" : "") << ",conducting\n";
    for (std::size_t k = 0; k < w.size(); k += stride) {
        out << text::format_double(w.time[k]);
        for (int p = 0; p < 3; ++p) out << ',' << text::format_double(w.phase_current[p][k]);
        for (int p = 0; p < 3; ++p) out << ',' << text::format_double(w.phase_voltage[p][k]);
        if (boost) out << ',' << text::format_double(w.boost_current[k]);
        out << ',' << w.conducting[k] << '\n';
    }
}

}  // namespace fcev
