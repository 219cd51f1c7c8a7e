// Compiled with -mavx2 -mfma. Only reached through the dispatch table after
// a runtime CPU check.

#include "kernels_impl.hpp"

#include <immintrin.h>

namespace fcev::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double trapezoid(const double* t, const double* y, std::size_t n) {
    if (n < 2) return 0.0;
    const __m256d half = _mm256_set1_pd(0.5);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 1;
    for (; i + 4 <= n; i += 4) {
        const __m256d dt = _mm256_sub_pd(_mm256_loadu_pd(t + i), _mm256_loadu_pd(t + i - 1));
        const __m256d sy = _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(y + i - 1));
        acc = _mm256_fmadd_pd(_mm256_mul_pd(half, dt), sy, acc);
    }
    double sum = hsum(acc);
    for (; i < n; ++i) {
        sum += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    }
    return sum;
}

void road_load(const double* v, const double* a, std::size_t n, const RoadLoadCoeffs& c,
               double* p_car, double* p_loss, double* p_ac) {
    const __m256d mass = _mm256_set1_pd(c.mass);
    const __m256d kd = _mm256_set1_pd(c.drag_factor);
    const __m256d fr = _mm256_set1_pd(c.rolling_force);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vv = _mm256_loadu_pd(v + i);
        const __m256d aa = _mm256_loadu_pd(a + i);
        const __m256d car = _mm256_mul_pd(_mm256_mul_pd(mass, vv), aa);
        const __m256d force = _mm256_fmadd_pd(_mm256_mul_pd(kd, vv), vv, fr);
        const __m256d loss = _mm256_mul_pd(vv, force);
        _mm256_storeu_pd(p_car + i, car);
        _mm256_storeu_pd(p_loss + i, loss);
        _mm256_storeu_pd(p_ac + i, _mm256_add_pd(car, loss));
    }
    for (; i < n; ++i) {
        const double car = c.mass * v[i] * a[i];
        const double loss = v[i] * (c.drag_factor * v[i] * v[i] + c.rolling_force);
        p_car[i] = car;
        p_loss[i] = loss;
        p_ac[i] = car + loss;
    }
}

ConductionSums conduction_quadrature(const double* w, const double* s, const double* c,
                                     std::size_t n, const ConductionCoeffs& k) {
    const __m256d ipk = _mm256_set1_pd(k.current_peak);
    const __m256d mcos = _mm256_set1_pd(k.modulation * k.cos_phi);
    const __m256d msin = _mm256_set1_pd(k.modulation * k.sin_phi);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d v0 = _mm256_set1_pd(k.igbt_threshold);
    const __m256d r0 = _mm256_set1_pd(k.igbt_resistance);
    const __m256d vd = _mm256_set1_pd(k.diode_threshold);
    const __m256d rd = _mm256_set1_pd(k.diode_resistance);
    __m256d acc_igbt = _mm256_setzero_pd();
    __m256d acc_diode = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ww = _mm256_loadu_pd(w + i);
        const __m256d ss = _mm256_loadu_pd(s + i);
        const __m256d cc = _mm256_loadu_pd(c + i);
        const __m256d cur = _mm256_mul_pd(ipk, ss);
        const __m256d mod = _mm256_fmadd_pd(ss, mcos, _mm256_mul_pd(cc, msin));
        const __m256d duty = _mm256_mul_pd(half, _mm256_add_pd(one, mod));
        const __m256d comp = _mm256_sub_pd(one, duty);
        const __m256d pi = _mm256_mul_pd(cur, _mm256_fmadd_pd(r0, cur, v0));
        const __m256d pd = _mm256_mul_pd(cur, _mm256_fmadd_pd(rd, cur, vd));
        acc_igbt = _mm256_fmadd_pd(_mm256_mul_pd(ww, duty), pi, acc_igbt);
        acc_diode = _mm256_fmadd_pd(_mm256_mul_pd(ww, comp), pd, acc_diode);
    }
    double igbt = hsum(acc_igbt);
    double diode = hsum(acc_diode);
    for (; i < n; ++i) {
        const double cur = k.current_peak * s[i];
        const double duty = 0.5 * (1.0 + k.modulation * (s[i] * k.cos_phi + c[i] * k.sin_phi));
        igbt += w[i] * duty * (k.igbt_threshold * cur + k.igbt_resistance * cur * cur);
        diode += w[i] * (1.0 - duty) * (k.diode_threshold * cur + k.diode_resistance * cur * cur);
    }
    return {igbt, diode};
}

void central_difference(const double* t, const double* v, std::size_t n, double* out) {
    if (n < 3) {
        scalar::central_difference(t, v, n, out);
        return;
    }
    out[0] = (v[1] - v[0]) / (t[1] - t[0]);
    std::size_t i = 1;
    for (; i + 4 < n; i += 4) {
        const __m256d dv = _mm256_sub_pd(_mm256_loadu_pd(v + i + 1), _mm256_loadu_pd(v + i - 1));
        const __m256d dt = _mm256_sub_pd(_mm256_loadu_pd(t + i + 1), _mm256_loadu_pd(t + i - 1));
        _mm256_storeu_pd(out + i, _mm256_div_pd(dv, dt));
    }
    for (; i + 1 < n; ++i) {
        out[i] = (v[i + 1] - v[i - 1]) / (t[i + 1] - t[i - 1]);
    }
    out[n - 1] = (v[n - 1] - v[n - 2]) / (t[n - 1] - t[n - 2]);
}

}  // namespace fcev::kernels::avx2
