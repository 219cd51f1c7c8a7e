// fcev: drivetrain loss analysis, drive-cycle runs and switched-waveform
// validation for the dual-inverter and boosted fuel-cell drivetrains.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fcev/config.hpp"
#include "fcev/error.hpp"
#include "fcev/report.hpp"

#ifndef FCEV_DATA_DIR
#define FCEV_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace fcev;

namespace {

constexpr int kComputeError = 1;
constexpr int kConfigError = 2;

struct Common {
    std::string topology = "both";
    std::string config;
    std::string out;
    std::string format = "text";
};

std::vector<TopologyKind> kinds(const std::string& t) {
    if (t == "both") return {TopologyKind::dual_inverter, TopologyKind::conventional};
    return {parse_topology(t)};
}

ToolkitConfig configuration(const Common& c) {
    return c.config.empty() ? ToolkitConfig{} : load_config(c.config);
}

std::string resolve_cycle(const std::string& arg) {
    if (fs::exists(arg)) return arg;
    const fs::path shipped = fs::path(FCEV_DATA_DIR) / "cycles" / (arg + ".csv");
    if (arg.find('/') == std::string::npos && fs::exists(shipped)) return shipped.string();
    throw Error(Errc::config_error, "cycle file '" + arg + "' not found");
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::config_error, "cannot write '" + path.string() + "'");
    f << content;
    if (!f) throw Error(Errc::config_error, "write to '" + path.string() + "' failed");
}

fs::path output_dir(const Common& c) {
    fs::path dir(c.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw Error(Errc::config_error, "cannot create output directory '" + c.out + "'");
    return dir;
}

void emit(const Common& c, const std::string& name, const std::string& content) {
    if (c.out.empty()) {
        std::cout << content;
    } else {
        write_file(output_dir(c) / name, content);
    }
}

int run_analyze(const Common& c, double fc_power, std::optional<double> speed, std::optional<double> shaft) {
    const auto cfg = configuration(c);
    std::vector<PointAnalysis> points;
    for (auto k : kinds(c.topology)) {
        points.push_back(analyze_point(cfg.topology(k), fc_power, speed.value_or(cfg.validation_speed), shaft));
    }
    if (c.format == "json") {
        emit(c, "analysis.json", point_json(points));
    } else {
        std::ostringstream s;
        write_point_text(s, points);
        emit(c, "analysis.txt", s.str());
    }
    return 0;
}

std::vector<CycleResult> run_cycles(const Common& c, const std::vector<std::string>& cycles) {
    const auto cfg = configuration(c);
    std::vector<CycleResult> runs;
    for (const auto& name : cycles) {
        const auto cycle = load_cycle(resolve_cycle(name));
        for (auto k : kinds(c.topology)) runs.push_back(run_cycle(cycle, cfg.topology(k)));
    }
    return runs;
}

void emit_cycle_files(const Common& c, const std::vector<CycleResult>& runs) {
    const auto dir = output_dir(c);
    for (const auto& r : runs) {
        const std::string stem = r.cycle_name + "_" + to_string(r.kind);
        if (c.format != "json") {
            std::ostringstream csv;
            write_cycle_csv(csv, r);
            write_file(dir / (stem + ".csv"), csv.str());
        }
        write_file(dir / (stem + ".json"), cycle_summary_json(r));
    }
}

int run_cycle_cmd(const Common& c, const std::vector<std::string>& cycles) {
    const auto runs = run_cycles(c, cycles);
    if (!c.out.empty()) emit_cycle_files(c, runs);
    if (c.format == "json" && c.out.empty()) {
        std::cout << cycle_comparison_json(runs);
    } else {
        write_cycle_text(std::cout, runs);
    }
    return 0;
}

int run_compare(const Common& c, const std::vector<std::string>& cycles) {
    Common both = c;
    both.topology = "both";
    const auto runs = run_cycles(both, cycles);
    if (!c.out.empty()) {
        emit_cycle_files(both, runs);
        write_file(output_dir(c) / "comparison.json", cycle_comparison_json(runs));
    }
    if (c.format == "json" && c.out.empty()) {
        std::cout << cycle_comparison_json(runs);
    } else {
        write_cycle_text(std::cout, runs);
    }
    return 0;
}

int run_simulate(const Common& c, double fc_power, std::optional<double> speed, std::optional<double> shaft,
                 std::optional<double> dt, std::size_t stride) {
    const auto cfg = configuration(c);
    for (auto k : kinds(c.topology)) {
        const auto& tc = cfg.topology(k);
        SimulationSummary s;
        s.analytical = analyze_point(tc, fc_power, speed.value_or(cfg.validation_speed), shaft);
        auto sc = make_sim_config(tc, s.analytical.result, cfg.simulation);
        if (dt) sc.dt = *dt;
        const auto w = run_switched(sc);
        s.levels = count_voltage_levels(w, cfg.level_tolerance, cfg.level_min_share);
        s.comparison = compare_to_analytical(w, s.analytical.result.losses);
        const std::string stem = std::string("simulate_") + to_string(k);
        if (!c.out.empty()) {
            std::ostringstream csv;
            write_waveform_csv(csv, w, stride);
            write_file(output_dir(c) / (stem + "_waveform.csv"), csv.str());
            write_file(output_dir(c) / (stem + ".json"), simulation_json(s, w));
        }
        if (c.format == "json" && c.out.empty()) {
            std::cout << simulation_json(s, w);
        } else {
            write_simulation_text(std::cout, s, w);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuel-cell drivetrain loss toolkit"};
    app.require_subcommand(1);

    Common common;
    double fc_power = 50e3;
    std::optional<double> speed, shaft, dt;
    std::vector<std::string> cycles;
    std::size_t stride = 1;

    auto add_common = [&](CLI::App* sub, bool with_topology = true) {
        if (with_topology) {
            sub->add_option("--topology", common.topology, "dual, conventional or both")
                ->check(CLI::IsMember({"dual", "conventional", "both"}));
        }
        sub->add_option("--config", common.config, "configuration file (INI)");
        sub->add_option("--out", common.out, "output directory");
        sub->add_option("--format", common.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    };

    auto* analyze = app.add_subcommand("analyze", "analytical losses at one operating point");
    add_common(analyze);
    analyze->add_option("--fc-power", fc_power, "fuel-cell power, W")->check(CLI::NonNegativeNumber);
    analyze->add_option("--speed", speed, "electrical speed, rad/s");
    analyze->add_option("--shaft-power", shaft, "motor output power, W (default: fc power)");

    auto* cycle = app.add_subcommand("cycle", "run a drive cycle");
    add_common(cycle);
    cycle->add_option("--cycle", cycles, "cycle CSV path, or hwfet / udds")->required();

    auto* simulate = app.add_subcommand("simulate", "switched-waveform simulation at one operating point");
    add_common(simulate);
    simulate->add_option("--fc-power", fc_power, "fuel-cell power, W")->check(CLI::NonNegativeNumber);
    simulate->add_option("--speed", speed, "electrical speed, rad/s");
    simulate->add_option("--shaft-power", shaft, "motor output power, W (default: fc power)");
    simulate->add_option("--dt", dt, "time step, s");
    simulate->add_option("--stride", stride, "write every n-th waveform sample")->check(CLI::PositiveNumber);

    auto* compare = app.add_subcommand("compare", "both drivetrains over drive cycles");
    add_common(compare, false);
    compare->add_option("--cycle", cycles, "cycle CSV path, or hwfet / udds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }

    try {
        if (*analyze) return run_analyze(common, fc_power, speed, shaft);
        if (*cycle) return run_cycle_cmd(common, cycles);
        if (*simulate) return run_simulate(common, fc_power, speed, shaft, dt, stride);
        if (*compare) return run_compare(common, cycles.empty() ? std::vector<std::string>{"hwfet", "udds"} : cycles);
    } catch (const Error& e) {
        std::cerr << "fcev: " << e.what() << '\n';
        switch (e.code()) {
            case Errc::config_error:
            case Errc::parse_error:
            case Errc::non_monotonic_time:
                return kConfigError;
            default:
                return kComputeError;
        }
    } catch (const std::exception& e) {
        std::cerr << "fcev: " << e.what() << '\n';
        return kComputeError;
    }
    return 0;
}
