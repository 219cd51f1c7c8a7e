#include "fcev/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include "fcev/error.hpp"
#include "text.hpp"

namespace fcev {

namespace {

using Section = std::map<std::string, std::pair<std::string, std::size_t>, std::less<>>;

struct Ini {
    std::map<std::string, Section, std::less<>> sections;
};

Ini read_ini(std::istream& in) {
    Ini ini;
    Section* current = nullptr;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = text::trim(line);
        if (t.empty() || t.front() == '#' || t.front() == ';') continue;
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (t.front() == '[') {
            if (t.back() != ']') throw Error(Errc::parse_error, where + "unterminated section header");
            const std::string name(text::trim(t.substr(1, t.size() - 2)));
            if (ini.sections.count(name)) throw Error(Errc::parse_error, where + "duplicate section [" + name + "]");
            current = &ini.sections[name];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) throw Error(Errc::parse_error, where + "expected key = value");
        if (!current) throw Error(Errc::parse_error, where + "key outside any section");
        auto value = t.substr(eq + 1);
        if (const auto hash = value.find(" #"); hash != std::string_view::npos) value = value.substr(0, hash);
        const std::string key(text::trim(t.substr(0, eq)));
        if (current->count(key)) throw Error(Errc::parse_error, where + "duplicate key '" + key + "'");
        (*current)[key] = {std::string(text::trim(value)), lineno};
    }
    return ini;
}

class Reader {
public:
    Reader(Ini ini, std::string base) : ini_(std::move(ini)), base_(std::move(base)) {}

    bool has_section(std::string_view s) const { return ini_.sections.count(s) != 0; }

    std::optional<std::string> str(std::string_view section, std::string_view key) {
        auto s = ini_.sections.find(section);
        if (s == ini_.sections.end()) return std::nullopt;
        auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        used_[std::string(section)].push_back(std::string(key));
        return k->second.first;
    }

    void number(std::string_view section, std::string_view key, double& out) {
        const auto v = str(section, key);
        if (!v) return;
        const auto d = text::to_double(*v);
        if (!d) {
            throw Error(Errc::config_error, "[" + std::string(section) + "] " + std::string(key) +
                                                " = '" + *v + "' is not a number");
        }
        out = *d;
    }

    void integer(std::string_view section, std::string_view key, int& out) {
        double d = out;
        number(section, key, d);
        if (d != static_cast<int>(d)) {
            throw Error(Errc::config_error, "[" + std::string(section) + "] " + std::string(key) + " must be an integer");
        }
        out = static_cast<int>(d);
    }

    std::optional<std::string> path(std::string_view section, std::string_view key) {
        auto v = str(section, key);
        if (!v) return std::nullopt;
        std::filesystem::path p(*v);
        if (p.is_relative()) p = std::filesystem::path(base_) / p;
        return p.lexically_normal().string();
    }

    void check_all_used() const {
        for (const auto& [name, keys] : ini_.sections) {
            auto u = used_.find(name);
            for (const auto& [key, value] : keys) {
                const bool seen = u != used_.end() &&
                                  std::find(u->second.begin(), u->second.end(), key) != u->second.end();
                if (!seen) {
                    throw Error(Errc::config_error, "line " + std::to_string(value.second) + ": unknown key '" + key +
                                                        "' in [" + name + "]");
                }
            }
        }
    }

private:
    Ini ini_;
    std::string base_;
    std::map<std::string, std::vector<std::string>, std::less<>> used_;
};

void read_topology(Reader& r, const char* section, const char* voltage_key, TopologyConfig& t,
                   const std::vector<PowerModuleParams>& modules) {
    r.number(section, voltage_key, t.battery_voltage);
    r.number(section, "f_sw", t.switching_frequency);
    r.number(section, "m_max", t.max_modulation);
    r.number(section, "ceiling_factor", t.current_ceiling_factor);
    if (auto m = r.str(section, "module")) t.inverter_module = find_module(modules, *m);
}

}  // namespace

void ToolkitConfig::validate() const {
    dual.validate();
    conventional.validate();
    if (dual.kind != TopologyKind::dual_inverter || conventional.kind != TopologyKind::conventional) {
        throw Error(Errc::config_error, "topology kinds do not match their sections");
    }
    if (!(simulation.steps_per_carrier >= 100.0)) {
        throw Error(Errc::config_error, "steps_per_carrier must be at least 100");
    }
    if (simulation.settle_periods < 0 || simulation.measured_periods < 1 ||
        simulation.settle_periods + simulation.measured_periods < 2) {
        throw Error(Errc::config_error, "simulation needs at least two fundamental periods");
    }
    if (!(validation_speed > 0.0)) throw Error(Errc::config_error, "analysis speed must be positive");
    if (!(level_tolerance > 0.0)) throw Error(Errc::config_error, "level tolerance must be positive");
    if (!(level_min_share >= 0.0) || level_min_share >= 1.0) {
        throw Error(Errc::config_error, "level_min_share must be in [0, 1)");
    }
}

ToolkitConfig parse_config(std::istream& in, const std::string& base_dir) {
    Reader r(read_ini(in), base_dir);
    ToolkitConfig c;

    if (auto file = r.path("modules", "file")) {
        c.modules = load_modules(*file);
        c.sources.push_back(*file);
    }
    // Module rows may have been replaced; rebind the defaults by label.
    c.dual.inverter_module = find_module(c.modules, c.dual.inverter_module.label);
    c.conventional.inverter_module = find_module(c.modules, c.conventional.inverter_module.label);
    c.conventional.boost->module = find_module(c.modules, c.conventional.boost->module.label);

    MotorParams motor;
    double pole_pairs = motor.pole_pairs;
    r.number("motor", "p", pole_pairs);
    if (pole_pairs != static_cast<int>(pole_pairs)) throw Error(Errc::config_error, "[motor] p must be an integer");
    motor.pole_pairs = static_cast<int>(pole_pairs);
    r.number("motor", "L_s", motor.inductance);
    r.number("motor", "R_s", motor.resistance);
    r.number("motor", "psi_m", motor.flux_linkage);

    VehicleParams vehicle;
    r.number("vehicle", "M_car", vehicle.mass);
    r.number("vehicle", "A_f", vehicle.frontal_area);
    r.number("vehicle", "C_d", vehicle.drag_coefficient);
    r.number("vehicle", "C_r", vehicle.rolling_coefficient);
    r.number("vehicle", "gear_ratio", vehicle.gear_ratio);
    r.number("vehicle", "r_tire", vehicle.tire_radius);

    EnvironmentConstants env;
    r.number("environment", "rho_air", env.air_density);
    r.number("environment", "g", env.gravity);

    SharingPolicy policy;
    r.number("sharing", "tau", policy.time_constant);
    r.number("sharing", "P_min", policy.min_power);
    r.number("sharing", "P_max", policy.max_power);
    r.number("sharing", "slew", policy.slew_limit);

    FuelCellCurve fc;
    if (r.has_section("fuel_cell")) {
        double rated = fc.rated_power();
        r.number("fuel_cell", "rated_power", rated);
        if (auto table = r.path("fuel_cell", "table")) {
            fc = load_fuel_cell_table(*table, rated);
            c.sources.push_back(*table);
        } else {
            double voc = 500.0;
            double rint = 0.87;
            r.number("fuel_cell", "V_oc", voc);
            r.number("fuel_cell", "R_int", rint);
            double imax = voc / (2.0 * rint);
            r.number("fuel_cell", "max_current", imax);
            fc = FuelCellCurve::linear(voc, rint, rated, imax);
        }
    }

    read_topology(r, "dual", "V_bat", c.dual, c.modules);
    read_topology(r, "conventional", "V_bus", c.conventional, c.modules);
    auto& boost = *c.conventional.boost;
    if (auto m = r.str("conventional", "boost_module")) boost.module = find_module(c.modules, *m);
    r.number("conventional", "L_boost", boost.inductance);
    r.number("conventional", "R_boost", boost.inductor_resistance);
    r.number("conventional", "f_boost", boost.switching_frequency);

    for (TopologyConfig* t : {&c.dual, &c.conventional}) {
        t->motor = motor;
        t->vehicle = vehicle;
        t->environment = env;
        t->policy = policy;
        t->fuel_cell = fc;
    }

    r.number("simulation", "steps_per_carrier", c.simulation.steps_per_carrier);
    r.integer("simulation", "settle_periods", c.simulation.settle_periods);
    r.integer("simulation", "measured_periods", c.simulation.measured_periods);
    r.number("simulation", "level_tolerance", c.level_tolerance);
    r.number("simulation", "level_min_share", c.level_min_share);
    r.number("analysis", "speed", c.validation_speed);

    r.check_all_used();
    c.validate();
    return c;
}

ToolkitConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::config_error, "cannot open config file '" + path + "'");
    const auto parent = std::filesystem::path(path).parent_path();
    auto c = parse_config(in, parent.empty() ? "." : parent.string());
    c.sources.insert(c.sources.begin(), path);
    return c;
}

}  // namespace fcev
