#pragma once

// Result tables and summaries shared by the command-line tool and the tests.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fcev/drive_cycle.hpp"
#include "fcev/switched_sim.hpp"

namespace fcev {

struct PointAnalysis {
    TopologyKind kind = TopologyKind::dual_inverter;
    double shaft_power = 0.0;
    double electrical_speed = 0.0;
    double fc_power = 0.0;
    PointResult result;
};

/// Analytical losses with the fuel cell delivering `fc_power`. The shaft
/// power defaults to the fuel-cell power.
PointAnalysis analyze_point(const TopologyConfig& cfg, double fc_power, double electrical_speed,
                            std::optional<double> shaft_power = std::nullopt);

/// Conventional total loss over dual total loss.
double loss_ratio(const PointResult& conventional, const PointResult& dual);

void write_point_text(std::ostream& out, const std::vector<PointAnalysis>& points);
std::string point_json(const std::vector<PointAnalysis>& points);

/// One row per sample: time, speed, power flows, loss columns.
void write_cycle_csv(std::ostream& out, const CycleResult& r);
std::string cycle_summary_json(const CycleResult& r);
void write_cycle_text(std::ostream& out, const std::vector<CycleResult>& runs);
/// Table-style summary of several runs, with dual minus conventional
/// efficiency per cycle when both are present.
std::string cycle_comparison_json(const std::vector<CycleResult>& runs);

struct SimulationSummary {
    PointAnalysis analytical;
    int levels = 0;
    ComparisonReport comparison;
};

std::string simulation_json(const SimulationSummary& s, const SimWaveforms& w);
void write_simulation_text(std::ostream& out, const SimulationSummary& s, const SimWaveforms& w);

}  // namespace fcev
