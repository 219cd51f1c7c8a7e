#pragma once

#include "fcev/kernels.hpp"

namespace fcev::kernels {

namespace scalar {
double trapezoid(const double* t, const double* y, std::size_t n);
void road_load(const double* v, const double* a, std::size_t n, const RoadLoadCoeffs& c,
               double* p_car, double* p_loss, double* p_ac);
ConductionSums conduction_quadrature(const double* w, const double* s, const double* c,
                                     std::size_t n, const ConductionCoeffs& k);
void central_difference(const double* t, const double* v, std::size_t n, double* out);
}  // namespace scalar

#if defined(FCEV_HAVE_AVX2)
namespace avx2 {
double trapezoid(const double* t, const double* y, std::size_t n);
void road_load(const double* v, const double* a, std::size_t n, const RoadLoadCoeffs& c,
               double* p_car, double* p_loss, double* p_ac);
ConductionSums conduction_quadrature(const double* w, const double* s, const double* c,
                                     std::size_t n, const ConductionCoeffs& k);
void central_difference(const double* t, const double* v, std::size_t n, double* out);
}  // namespace avx2
#endif

}  // namespace fcev::kernels
