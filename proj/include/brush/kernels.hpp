#pragma once

#include <cstdint>
#include <string>

namespace brush::simd {

// Escape-time iteration parameters for F_{a,b}(z) = a e^z + b e^{-z}.
struct EscapeParams {
    double a_re = 0, a_im = 0;
    double b_re = 0, b_im = 0;
    double R2 = 2500.0;  // escape radius squared
    int maxiter = 100;
};

// counts[i]: iteration at which escape was certified (three consecutive
// modulus increases beyond R, or modulus overflow), 0 if the orbit stayed
// bounded through maxiter.
using EscapeKernelFn = void (*)(const double* re, const double* im, int n,
                                const EscapeParams& p, int32_t* counts);

// out[i] = |F(z_i)|^2.
using ModulusKernelFn = void (*)(const double* re, const double* im, int n,
                                 double a_re, double a_im, double b_re, double b_im,
                                 double* out);

// Scalar reference kernels (always available). The vector variants run the
// same fma-based algorithm lane-wise and produce bit-identical results.
void escape_counts_scalar(const double* re, const double* im, int n,
                          const EscapeParams& p, int32_t* counts);
void modulus_sq_scalar(const double* re, const double* im, int n, double a_re,
                       double a_im, double b_re, double b_im, double* out);

#if defined(BRUSH_HAVE_AVX2_TU)
void escape_counts_avx2(const double* re, const double* im, int n,
                        const EscapeParams& p, int32_t* counts);
void modulus_sq_avx2(const double* re, const double* im, int n, double a_re,
                     double a_im, double b_re, double b_im, double* out);
#endif

// Runtime dispatch: AVX2+FMA when the CPU supports it (and the TU was
// built), scalar otherwise. BRUSH_FORCE_SCALAR=1 pins the scalar path.
EscapeKernelFn dispatched_escape_kernel();
ModulusKernelFn dispatched_modulus_kernel();
std::string dispatched_kernel_name();

// AVX2 entry points when compiled in and supported at runtime, else null
// (for equivalence tests).
EscapeKernelFn avx2_escape_kernel_or_null();
ModulusKernelFn avx2_modulus_kernel_or_null();

}  // namespace brush::simd
