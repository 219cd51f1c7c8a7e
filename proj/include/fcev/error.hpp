#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace fcev {

enum class Errc {
    infeasible,
    zero_speed_power,
    domain_error,
    fc_voltage_limit,
    bat_voltage_limit,
    zero_current,
    out_of_range,
    unreachable,
    parse_error,
    non_monotonic_time,
    zero_energy,
    unstable_integration,
    config_error,
};

const char* to_string(Errc code) noexcept;

/// Library error. Every failure the toolkit reports is one of these; the
/// code identifies the failure class and, for drive-cycle runs, the sample
/// index at which it occurred.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);
    Error(Errc code, const std::string& message, std::size_t sample);

    Errc code() const noexcept { return code_; }
    std::optional<std::size_t> sample() const noexcept { return sample_; }

private:
    Errc code_;
    std::optional<std::size_t> sample_;
};

}  // namespace fcev
