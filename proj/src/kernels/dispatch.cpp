// Runtime kernel selection. Order of authority: explicit Kind argument,
// RYDGAUGE_KERNEL environment override, CPU capability probe.

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "rydgauge/kernels.hpp"

namespace rydgauge::kernels {

namespace {

bool cpu_supports_vector_kernel() {
#if defined(RYDGAUGE_SIMD_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    // Without an ISA-specific build the vector TU targets the baseline ISA,
    // which every host that runs the binary supports by definition.
    return detail::simd_compiled();
#endif
}

Kind env_override() {
    const char* e = std::getenv("RYDGAUGE_KERNEL");
    if (!e || !*e) return Kind::Auto;
    if (std::strcmp(e, "scalar") == 0) return Kind::Scalar;
    if (std::strcmp(e, "simd") == 0) return Kind::Simd;
    if (std::strcmp(e, "auto") == 0) return Kind::Auto;
    throw std::runtime_error(std::string("RYDGAUGE_KERNEL: unknown value '") + e +
                             "' (expected scalar, simd or auto)");
}

Kind resolve(Kind requested) {
    Kind k = requested == Kind::Auto ? env_override() : requested;
    if (k == Kind::Auto) k = simd_available() ? Kind::Simd : Kind::Scalar;
    if (k == Kind::Simd && !simd_available())
        throw std::runtime_error("simd kernel requested but not available on this host");
    return k;
}

}  // namespace

bool simd_available() { return detail::simd_compiled() && cpu_supports_vector_kernel(); }

const char* resolve_kernel_name(Kind kind) {
    if (resolve(kind) == Kind::Scalar) return "scalar";
#if defined(RYDGAUGE_SIMD_AVX2)
    return "simd-avx2";
#else
    return "simd";
#endif
}

void eigh16_batch(const double* a, int nb, double* evals, double* evecs, Kind kind) {
    if (resolve(kind) == Kind::Simd)
        detail::eigh16_batch_simd(a, nb, evals, evecs);
    else
        detail::eigh16_batch_scalar(a, nb, evals, evecs);
}

void eigh16(const double* a, double* evals, double* evecs, Kind kind) {
    eigh16_batch(a, 1, evals, evecs, kind);
}

}  // namespace rydgauge::kernels
