#include "fcev/fuel_cell.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "fcev/error.hpp"
#include "text.hpp"

namespace fcev {

namespace {

constexpr double kDefaultOpenCircuit = 500.0;
constexpr double kDefaultResistance = 0.87;
constexpr double kDefaultRated = 70e3;

// Smaller root of s I^2 + b I - P = 0 with s < 0, b > 0.
double low_root(double s, double b, double power) {
    const double disc = std::max(b * b + 4.0 * s * power, 0.0);
    return 2.0 * power / (b + std::sqrt(disc));
}

}  // namespace

FuelCellCurve::FuelCellCurve()
    : open_circuit_voltage_(kDefaultOpenCircuit),
      internal_resistance_(kDefaultResistance),
      rated_power_(kDefaultRated),
      max_current_(kDefaultOpenCircuit / (2.0 * kDefaultResistance)) {
    finish();
}

FuelCellCurve FuelCellCurve::linear(double voc, double r, double rated_power, double max_current) {
    if (!(voc > 0.0) || !(r > 0.0) || !(rated_power > 0.0) || !(max_current > 0.0)) {
        throw Error(Errc::config_error, "fuel-cell V_oc, R_int, rated power and max current must be positive");
    }
    if (voc - r * max_current <= 0.0) {
        throw Error(Errc::config_error, "fuel-cell max current drives the stack voltage to zero");
    }
    FuelCellCurve c;
    c.open_circuit_voltage_ = voc;
    c.internal_resistance_ = r;
    c.points_.clear();
    c.rated_power_ = rated_power;
    c.max_current_ = max_current;
    c.finish();
    return c;
}

FuelCellCurve FuelCellCurve::table(std::vector<std::pair<double, double>> points, double rated_power) {
    if (points.size() < 2) throw Error(Errc::config_error, "fuel-cell table needs at least two breakpoints");
    if (points.front().first != 0.0) throw Error(Errc::config_error, "fuel-cell table must start at 0 A");
    for (std::size_t k = 1; k < points.size(); ++k) {
        if (!(points[k].first > points[k - 1].first)) {
            throw Error(Errc::config_error, "fuel-cell table current must be strictly increasing");
        }
        if (!(points[k].second < points[k - 1].second)) {
            throw Error(Errc::config_error, "fuel-cell table voltage must be strictly decreasing");
        }
    }
    if (!(points.back().second > 0.0)) throw Error(Errc::config_error, "fuel-cell table voltage must stay positive");
    if (!(rated_power > 0.0)) throw Error(Errc::config_error, "fuel-cell rated power must be positive");
    FuelCellCurve c;
    c.points_ = std::move(points);
    c.open_circuit_voltage_ = c.points_.front().second;
    c.internal_resistance_ = 0.0;
    c.rated_power_ = rated_power;
    c.max_current_ = c.points_.back().first;
    c.finish();
    return c;
}

void FuelCellCurve::finish() {
    if (is_linear()) {
        usable_limit_ = std::min(max_current_, open_circuit_voltage_ / (2.0 * internal_resistance_));
        return;
    }
    // First maximum of P(I) = I V(I) walking up the table.
    usable_limit_ = points_.back().first;
    for (std::size_t k = 1; k < points_.size(); ++k) {
        const auto [i0, v0] = points_[k - 1];
        const auto [i1, v1] = points_[k];
        const double s = (v1 - v0) / (i1 - i0);
        const double peak = (s * i0 - v0) / (2.0 * s);
        if (peak >= i0 && peak < i1) {
            usable_limit_ = peak;
            return;
        }
        if (i1 * v1 < i0 * v0) {
            usable_limit_ = i0;
            return;
        }
    }
}

double FuelCellCurve::max_power() const noexcept {
    const double i = usable_limit_;
    if (is_linear()) return i * (open_circuit_voltage_ - internal_resistance_ * i);
    return i * voltage_at_current(i);
}

double FuelCellCurve::voltage_at_current(double current) const {
    if (!(current >= 0.0) || current > max_current_ * (1.0 + 1e-12)) {
        throw Error(Errc::out_of_range, "fuel-cell current " + std::to_string(current) +
                                            " A outside [0, " + std::to_string(max_current_) + "]");
    }
    if (is_linear()) return open_circuit_voltage_ - internal_resistance_ * current;
    auto it = std::upper_bound(points_.begin(), points_.end(), current,
                               [](double x, const auto& p) { return x < p.first; });
    if (it == points_.end()) return points_.back().second;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double f = (current - lo.first) / (hi.first - lo.first);
    return lo.second + f * (hi.second - lo.second);
}

double FuelCellCurve::current_at_power(double power) const {
    if (!(power >= 0.0)) {
        throw Error(Errc::out_of_range, "fuel-cell power must be non-negative, got " + std::to_string(power));
    }
    if (power == 0.0) return 0.0;
    const double pmax = max_power();
    if (power > pmax * (1.0 + 1e-12)) {
        throw Error(Errc::unreachable, "fuel-cell power " + std::to_string(power) +
                                           " W exceeds the curve maximum " + std::to_string(pmax) + " W");
    }
    if (is_linear()) {
        return std::min(low_root(-internal_resistance_, open_circuit_voltage_, power), usable_limit_);
    }
    for (std::size_t k = 1; k < points_.size(); ++k) {
        const auto [i0, v0] = points_[k - 1];
        const auto [i1, v1] = points_[k];
        const double seg_end = std::min(i1, usable_limit_);
        const double v_end = voltage_at_current(seg_end);
        if (seg_end * v_end < power && seg_end < usable_limit_) continue;
        const double s = (v1 - v0) / (i1 - i0);
        const double b = v0 - s * i0;
        return std::clamp(low_root(s, b, power), i0, seg_end);
    }
    return usable_limit_;
}

FuelCellCurve parse_fuel_cell_table(std::istream& in, double rated_power) {
    std::vector<std::pair<double, double>> pts;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::is_blank_or_comment(line)) continue;
        const auto cols = text::split(line);
        if (!header) {
            if (cols.size() != 2 || cols[0] != "current_A" || cols[1] != "voltage_V") {
                throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": expected header current_A,voltage_V");
            }
            header = true;
            continue;
        }
        const auto i = cols.size() == 2 ? text::to_double(cols[0]) : std::nullopt;
        const auto v = cols.size() == 2 ? text::to_double(cols[1]) : std::nullopt;
        if (!i || !v) throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": expected two numbers");
        pts.emplace_back(*i, *v);
    }
    return FuelCellCurve::table(std::move(pts), rated_power);
}

FuelCellCurve load_fuel_cell_table(const std::string& path, double rated_power) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::config_error, "cannot open fuel-cell table '" + path + "'");
    return parse_fuel_cell_table(in, rated_power);
}

}  // namespace fcev
