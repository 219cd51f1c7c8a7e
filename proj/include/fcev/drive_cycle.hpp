#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fcev/drivetrain.hpp"

namespace fcev {

struct DriveCycle {
    std::string name;
    std::vector<double> time;   // s
    std::vector<double> speed;  // m/s

    std::size_t size() const noexcept { return time.size(); }
    double duration() const noexcept { return time.empty() ? 0.0 : time.back() - time.front(); }
    void validate() const;
};

/// Reads "time_s,speed_mps" or "time_s,speed_mph" CSV. A file without a
/// header row is read as m/s.
DriveCycle parse_cycle(std::istream& in, std::string name);
DriveCycle load_cycle(const std::string& path);

struct SampleRecord {
    double time = 0.0;
    double speed = 0.0;
    double shaft_power = 0.0;   // P_ac
    double dc_power = 0.0;      // P_dc
    double fc_reference = 0.0;  // filter output
    double fc_power = 0.0;
    double battery_power = 0.0;
    double output_power = 0.0;  // p_out of the efficiency ratio
    double d_current = 0.0;
    double q_current = 0.0;
    bool fc_adjusted = false;
    LossBreakdown losses;
};

struct CycleEnergies {
    double output = 0.0;          // J
    double loss_inverter = 0.0;   // J, converters incl. boost
    double loss_motor = 0.0;      // J
};

struct CycleResult {
    std::string cycle_name;
    TopologyKind kind = TopologyKind::dual_inverter;
    std::vector<SampleRecord> samples;
    CycleEnergies energies;
    double efficiency = 1.0;
    /// Set when there was no output energy to rate.
    bool zero_energy = false;
    FcConstraintReport fc_report;
    std::size_t fc_adjusted_samples = 0;
};

/// Runs a topology over a cycle sample by sample.
CycleResult run_cycle(const DriveCycle& cycle, const TopologyConfig& cfg);

/// Output energy over output-plus-loss energy. Throws Errc::zero_energy.
double energy_efficiency(const CycleResult& result);
double energy_efficiency(const CycleEnergies& energies);

/// Trapezoidal energies of the given power series.
CycleEnergies integrate_energies(std::span<const double> time, std::span<const double> output,
                                 std::span<const double> loss_inverter,
                                 std::span<const double> loss_motor);

}  // namespace fcev
