#include <bit>
#include <cmath>

#include "kernels_impl.hpp"

namespace brush::simd {

namespace {

// Width-1 lane built on IEEE scalar primitives; std::fma matches the
// vector fused multiply-add bit for bit.
struct VScalar {
    using f = double;
    using mask = bool;
    static constexpr int width = 1;

    static f load(const double* p) { return *p; }
    static void store(double* p, f v) { *p = v; }
    static f set(double v) { return v; }
    static f add(f a, f b) { return a + b; }
    static f sub(f a, f b) { return a - b; }
    static f mul(f a, f b) { return a * b; }
    static f div(f a, f b) { return a / b; }
    static f neg(f a) { return -a; }
    static f fma(f a, f b, f c) { return std::fma(a, b, c); }
    static f min(f a, f b) { return b < a ? b : a; }
    static f max(f a, f b) { return a < b ? b : a; }
    static f floor(f a) { return std::floor(a); }
    static f nearbyint(f a) { return std::nearbyint(a); }  // ties to even
    static mask cmp_gt(f a, f b) { return a > b; }
    static mask cmp_ge(f a, f b) { return a >= b; }
    static mask cmp_eq(f a, f b) { return a == b; }
    static mask cmp_and(mask a, mask b) { return a && b; }
    static mask cmp_or(mask a, mask b) { return a || b; }
    static mask cmp_xor(mask a, mask b) { return a != b; }
    static f blend(mask m, f a, f b) { return m ? a : b; }
    static bool all_true(mask m) { return m; }
    static f pow2i(f k) {
        // k is integral and clamped well inside the exponent range.
        const int64_t ik = static_cast<int64_t>(k);
        return std::bit_cast<double>((ik + 1023) << 52);
    }
};

}  // namespace

void escape_counts_scalar(const double* re, const double* im, int n,
                          const EscapeParams& p, int32_t* counts) {
    detail::escape_counts_impl<VScalar>(re, im, n, p, counts);
}

void modulus_sq_scalar(const double* re, const double* im, int n, double a_re,
                       double a_im, double b_re, double b_im, double* out) {
    detail::modulus_sq_impl<VScalar>(re, im, n, a_re, a_im, b_re, b_im, out);
}

}  // namespace brush::simd
