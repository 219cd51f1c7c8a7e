#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace fcev::kernels {

namespace {

constexpr KernelTable kScalar{
    "scalar",
    &scalar::trapezoid,
    &scalar::road_load,
    &scalar::conduction_quadrature,
    &scalar::central_difference,
};

#if defined(FCEV_HAVE_AVX2)
constexpr KernelTable kAvx2{
    "avx2",
    &avx2::trapezoid,
    &avx2::road_load,
    &avx2::conduction_quadrature,
    &avx2::central_difference,
};

bool cpu_has_avx2() noexcept {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& select() noexcept {
    if (const char* forced = std::getenv("FCEV_KERNELS"); forced && std::strcmp(forced, "scalar") == 0) {
        return kScalar;
    }
    if (const KernelTable* t = avx2_table()) return *t;
    return kScalar;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(FCEV_HAVE_AVX2)
    static const bool supported = cpu_has_avx2();
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() noexcept {
    static const KernelTable& table = select();
    return table;
}

}  // namespace fcev::kernels
