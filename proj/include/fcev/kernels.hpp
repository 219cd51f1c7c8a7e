#pragma once

// Data-parallel inner loops. Each kernel has a portable scalar reference
// and, on x86-64 builds with AVX2 available at runtime, a vectorised
// variant. The active table is chosen once on first use; setting
// FCEV_KERNELS=scalar in the environment pins the scalar path.

#include <cstddef>

namespace fcev::kernels {

struct RoadLoadCoeffs {
    double mass = 0.0;           // kg
    double drag_factor = 0.0;    // 0.5 rho C_d A_f
    double rolling_force = 0.0;  // C_r M g
};

/// Per-device conduction integrand coefficients. Quadrature node k carries
/// weight w, sin(theta), cos(theta); the duty is (1 + m sin(theta + phi)) / 2.
struct ConductionCoeffs {
    double current_peak = 0.0;
    double modulation = 0.0;
    double cos_phi = 1.0;
    double sin_phi = 0.0;
    double igbt_threshold = 0.0;
    double igbt_resistance = 0.0;
    double diode_threshold = 0.0;
    double diode_resistance = 0.0;
};

struct ConductionSums {
    double igbt = 0.0;
    double diode = 0.0;
};

struct KernelTable {
    const char* name;

    /// Trapezoidal integral of y over t.
    double (*trapezoid)(const double* t, const double* y, std::size_t n);

    /// P_car = M v a, P_loss = v (k_d v^2 + F_r), P_ac = P_car + P_loss.
    void (*road_load)(const double* v, const double* a, std::size_t n, const RoadLoadCoeffs& c,
                      double* p_car, double* p_loss, double* p_ac);

    /// sum_k w_k d(theta_k) (V0 i_k + R i_k^2) for the IGBT and the same with
    /// 1 - d for the diode, i_k = I sin(theta_k).
    ConductionSums (*conduction_quadrature)(const double* w, const double* s, const double* c,
                                            std::size_t n, const ConductionCoeffs& k);

    /// dv/dt, central inside, one-sided at both ends. n >= 2.
    void (*central_difference)(const double* t, const double* v, std::size_t n, double* out);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_table() noexcept;

/// The table used by the library.
const KernelTable& active() noexcept;

}  // namespace fcev::kernels
