#pragma once

// Fixed-step switched-waveform simulation of the two drivetrains: two-level
// sinusoidal-PWM bridges feeding a three-phase RL + back-EMF winding, plus
// the boost cell of the conventional drive. Device losses are accounted per
// conduction interval and per commutation event.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fcev/drivetrain.hpp"

namespace fcev {

struct SimConfig {
    TopologyKind kind = TopologyKind::conventional;
    MotorParams motor;
    double electrical_speed = 0.0;  // rad/s
    Dq current;                     // commanded phasor, A
    Dq voltage;                     // total motor voltage, V
    /// Share produced by the first bridge (FC bridge of the dual drive).
    /// Unused for the conventional drive, whose single bridge makes `voltage`.
    Dq bridge1_voltage;
    double dc_voltage_1 = 800.0;  // first bridge
    double dc_voltage_2 = 0.0;    // battery bridge, dual drive only
    PowerModuleParams module;
    double switching_frequency = 20e3;
    /// Second-bridge carrier shift as a fraction of the carrier period.
    double carrier_shift = 0.5;

    std::optional<BoostParams> boost;  // conventional drive only
    FuelCellCurve fuel_cell;
    double fc_current = 0.0;  // boost input operating current, A

    std::optional<Dq> initial_current;  // defaults to `current`
    double dt = 0.0;                    // s
    double duration = 0.0;              // s
    double settle_time = 0.0;           // s, excluded from the accounting

    double fundamental_frequency() const noexcept;
    /// Throws Errc::unstable_integration for too coarse a step and
    /// Errc::config_error otherwise.
    void validate() const;
};

struct SimOptions {
    double steps_per_carrier = 200.0;
    int settle_periods = 1;
    int measured_periods = 3;
};

/// Simulation set-up for the operating point of `point`, evaluated with `cfg`.
SimConfig make_sim_config(const TopologyConfig& cfg, const PointResult& point, const SimOptions& options = {});

/// Energy accounted on one device over the measured window.
struct DeviceAccount {
    std::string name;  // e.g. "inv1.a.T+", "boost.D"
    double conduction = 0.0;  // J
    double switching = 0.0;   // J, turn-on + turn-off or recovery
    std::size_t events = 0;
};

struct SimWaveforms {
    TopologyKind kind = TopologyKind::conventional;
    double dt = 0.0;
    double fundamental_frequency = 0.0;
    std::size_t settle_samples = 0;
    double measured_duration = 0.0;

    std::vector<double> time;
    std::array<std::vector<double>, 3> phase_current;
    /// Phase voltage per the measurement convention: switch node to neutral
    /// for the conventional drive, across the winding for the dual drive.
    std::array<std::vector<double>, 3> phase_voltage;
    std::vector<double> boost_current;
    /// Two bits per leg giving the conducting device (0 T+, 1 D+, 2 T-, 3 D-);
    /// legs 0-2 first bridge, 3-5 second bridge, 6 boost (0 T, 1 D).
    std::vector<std::uint16_t> conducting;

    std::vector<DeviceAccount> devices;
    /// Mean loss powers over the measured window, W.
    LossBreakdown losses;

    /// Measured-window energies, J.
    double dc_energy = 0.0;               // into the bridge DC terminals
    double terminal_energy = 0.0;         // into the winding
    double bridge_conduction_energy = 0.0;
    double switching_energy = 0.0;        // all converters
    double fc_energy = 0.0;               // boost input
    double boost_output_energy = 0.0;     // boost into the bus

    /// Fundamental phasors (dq) over the measured window.
    Dq current_fundamental;
    std::array<Dq, 2> bridge_fundamental;
    Dq commanded_current;
    Dq commanded_voltage;
    std::array<Dq, 2> commanded_bridge_voltage;

    std::size_t size() const noexcept { return time.size(); }
};

SimWaveforms run_switched(const SimConfig& cfg);

/// Number of distinct voltage plateaus in phase `phase` over the measured
/// window. Samples are clustered so that neighbouring sorted values within
/// `tolerance` share a level; levels holding less than `min_share` of the
/// samples are edge artefacts and are dropped.
int count_voltage_levels(const SimWaveforms& w, double tolerance, double min_share = 0.002, int phase = 0);
int count_levels(const std::vector<double>& samples, double tolerance, double min_share = 0.002);

struct ComparisonRow {
    std::string category;
    double simulated = 0.0;
    double analytical = 0.0;
    double deviation = 0.0;  // (sim - analytical) / analytical
    double threshold = 0.0;
    bool passed() const noexcept { return std::abs(deviation) <= threshold; }
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    bool passed() const noexcept;
    const ComparisonRow* find(const std::string& category) const noexcept;
};

/// Per-category deviation of the simulated losses from the analytical ones.
/// Conduction rows are held to 10%, switching rows to 20%, the total to 15%.
ComparisonReport compare_to_analytical(const LossBreakdown& simulated, const LossBreakdown& analytical);
ComparisonReport compare_to_analytical(const SimWaveforms& w, const LossBreakdown& analytical);

/// Plot-ready waveform CSV, every `stride`-th sample.
void write_waveform_csv(std::ostream& out, const SimWaveforms& w, std::size_t stride = 1);

}  // namespace fcev
