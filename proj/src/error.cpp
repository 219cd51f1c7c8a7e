#include "fcev/error.hpp"

namespace fcev {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::infeasible: return "Infeasible";
        case Errc::zero_speed_power: return "ZeroSpeedPower";
        case Errc::domain_error: return "DomainError";
        case Errc::fc_voltage_limit: return "FCVoltageLimit";
        case Errc::bat_voltage_limit: return "BatVoltageLimit";
        case Errc::zero_current: return "ZeroCurrent";
        case Errc::out_of_range: return "OutOfRange";
        case Errc::unreachable: return "Unreachable";
        case Errc::parse_error: return "ParseError";
        case Errc::non_monotonic_time: return "NonMonotonicTime";
        case Errc::zero_energy: return "ZeroEnergy";
        case Errc::unstable_integration: return "UnstableIntegration";
        case Errc::config_error: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Error::Error(Errc code, const std::string& message, std::size_t sample)
    : std::runtime_error(std::string(to_string(code)) + " at sample " + std::to_string(sample) +
                         ": " + message),
      code_(code),
      sample_(sample) {}

}  // namespace fcev
