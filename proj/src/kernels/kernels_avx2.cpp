#include <immintrin.h>

#include "kernels_impl.hpp"

namespace brush::simd {

namespace {

// Four-wide AVX2 lane; every operation is the IEEE counterpart of the
// scalar lane (vfmadd is fused like std::fma, roundscale uses ties-to-even).
struct VAvx2 {
    using f = __m256d;
    using mask = __m256d;
    static constexpr int width = 4;

    static f load(const double* p) { return _mm256_loadu_pd(p); }
    static void store(double* p, f v) { _mm256_storeu_pd(p, v); }
    static f set(double v) { return _mm256_set1_pd(v); }
    static f add(f a, f b) { return _mm256_add_pd(a, b); }
    static f sub(f a, f b) { return _mm256_sub_pd(a, b); }
    static f mul(f a, f b) { return _mm256_mul_pd(a, b); }
    static f div(f a, f b) { return _mm256_div_pd(a, b); }
    static f neg(f a) { return _mm256_sub_pd(_mm256_setzero_pd(), a); }
    static f fma(f a, f b, f c) { return _mm256_fmadd_pd(a, b, c); }
    static f min(f a, f b) { return _mm256_min_pd(a, b); }
    static f max(f a, f b) { return _mm256_max_pd(a, b); }
    static f floor(f a) { return _mm256_floor_pd(a); }
    static f nearbyint(f a) {
        return _mm256_round_pd(a, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    }
    static mask cmp_gt(f a, f b) { return _mm256_cmp_pd(a, b, _CMP_GT_OQ); }
    static mask cmp_ge(f a, f b) { return _mm256_cmp_pd(a, b, _CMP_GE_OQ); }
    static mask cmp_eq(f a, f b) { return _mm256_cmp_pd(a, b, _CMP_EQ_OQ); }
    static mask cmp_and(mask a, mask b) { return _mm256_and_pd(a, b); }
    static mask cmp_or(mask a, mask b) { return _mm256_or_pd(a, b); }
    static mask cmp_xor(mask a, mask b) { return _mm256_xor_pd(a, b); }
    static f blend(mask m, f a, f b) { return _mm256_blendv_pd(b, a, m); }
    static bool all_true(mask m) { return _mm256_movemask_pd(m) == 0xF; }
    static f pow2i(f k) {
        const __m128i k32 = _mm256_cvtpd_epi32(k);
        const __m256i k64 = _mm256_cvtepi32_epi64(k32);
        const __m256i bits =
            _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
        return _mm256_castsi256_pd(bits);
    }
};

}  // namespace

void escape_counts_avx2(const double* re, const double* im, int n,
                        const EscapeParams& p, int32_t* counts) {
    detail::escape_counts_impl<VAvx2>(re, im, n, p, counts);
}

void modulus_sq_avx2(const double* re, const double* im, int n, double a_re,
                     double a_im, double b_re, double b_im, double* out) {
    detail::modulus_sq_impl<VAvx2>(re, im, n, a_re, a_im, b_re, b_im, out);
}

}  // namespace brush::simd
