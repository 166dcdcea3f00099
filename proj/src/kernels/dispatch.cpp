#include <cstdlib>

#include "brush/kernels.hpp"

namespace brush::simd {

namespace {

bool force_scalar() {
    const char* env = std::getenv("BRUSH_FORCE_SCALAR");
    return env && env[0] == '1';
}

bool avx2_usable() {
#if defined(BRUSH_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

}  // namespace

EscapeKernelFn avx2_escape_kernel_or_null() {
#if defined(BRUSH_HAVE_AVX2_TU)
    if (avx2_usable()) return &escape_counts_avx2;
#endif
    return nullptr;
}

ModulusKernelFn avx2_modulus_kernel_or_null() {
#if defined(BRUSH_HAVE_AVX2_TU)
    if (avx2_usable()) return &modulus_sq_avx2;
#endif
    return nullptr;
}

EscapeKernelFn dispatched_escape_kernel() {
    if (!force_scalar())
        if (auto fn = avx2_escape_kernel_or_null()) return fn;
    return &escape_counts_scalar;
}

ModulusKernelFn dispatched_modulus_kernel() {
    if (!force_scalar())
        if (auto fn = avx2_modulus_kernel_or_null()) return fn;
    return &modulus_sq_scalar;
}

std::string dispatched_kernel_name() {
    return dispatched_escape_kernel() == &escape_counts_scalar ? "scalar" : "avx2";
}

}  // namespace brush::simd
