#include "kernels_impl.hpp"

namespace fcev::kernels::scalar {

double trapezoid(const double* t, const double* y, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        sum += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    }
    return sum;
}

void road_load(const double* v, const double* a, std::size_t n, const RoadLoadCoeffs& c,
               double* p_car, double* p_loss, double* p_ac) {
    for (std::size_t i = 0; i < n; ++i) {
        const double car = c.mass * v[i] * a[i];
        const double loss = v[i] * (c.drag_factor * v[i] * v[i] + c.rolling_force);
        p_car[i] = car;
        p_loss[i] = loss;
        p_ac[i] = car + loss;
    }
}

ConductionSums conduction_quadrature(const double* w, const double* s, const double* c,
                                     std::size_t n, const ConductionCoeffs& k) {
    double igbt = 0.0;
    double diode = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double cur = k.current_peak * s[i];
        const double duty = 0.5 * (1.0 + k.modulation * (s[i] * k.cos_phi + c[i] * k.sin_phi));
        igbt += w[i] * duty * (k.igbt_threshold * cur + k.igbt_resistance * cur * cur);
        diode += w[i] * (1.0 - duty) * (k.diode_threshold * cur + k.diode_resistance * cur * cur);
    }
    return {igbt, diode};
}

void central_difference(const double* t, const double* v, std::size_t n, double* out) {
    if (n < 2) {
        if (n == 1) out[0] = 0.0;
        return;
    }
    out[0] = (v[1] - v[0]) / (t[1] - t[0]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = (v[i + 1] - v[i - 1]) / (t[i + 1] - t[i - 1]);
    }
    out[n - 1] = (v[n - 1] - v[n - 2]) / (t[n - 1] - t[n - 2]);
}

}  // namespace fcev::kernels::scalar
