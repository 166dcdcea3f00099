#pragma once

// Lane-generic escape and modulus kernels. The same algorithm is
// instantiated for the scalar lane and the AVX2 lane; every operation maps
// to an IEEE primitive (add/mul/fma/round-to-even/compare/blend), so the
// two instantiations agree bitwise. exp and sin/cos are computed with
// fixed polynomial schemes rather than libm so that the lanes stay
// identical.

#include <cstdint>

#include "brush/kernels.hpp"

namespace brush::simd::detail {

// Cody-Waite split of ln 2 and pi/2, and the exp/sin/cos polynomial
// coefficients (Cephes double precision set).
inline constexpr double kLog2E = 1.4426950408889634073599;
inline constexpr double kLn2Hi = 6.93145751953125e-1;
inline constexpr double kLn2Lo = 1.42860682030941723212e-6;

inline constexpr double kExpP[3] = {1.26177193074810590878e-4,
                                    3.02994407707441961300e-2,
                                    9.99999999999999999910e-1};
inline constexpr double kExpQ[4] = {3.00198505138664455042e-6,
                                    2.52448340349684104192e-3,
                                    2.27265548208155028766e-1,
                                    2.00000000000000000005e0};

inline constexpr double kTwoOverPi = 6.36619772367581343076e-1;
inline constexpr double kPio2_1 = 1.57079632673412561417e0;
inline constexpr double kPio2_2 = 6.07710050650619224932e-11;
inline constexpr double kPio2_3 = 2.02226624879595063154e-21;

inline constexpr double kSinCof[6] = {1.58962301576546568060e-16,
                                      -2.50507477628578072866e-8,
                                      2.75573136213857245213e-6,
                                      -1.98412698295895385996e-4,
                                      8.33333333332211858878e-3,
                                      -1.66666666666666307295e-1};
inline constexpr double kCosCof[6] = {-1.13585365213876817300e-11,
                                      2.08757008419747316778e-9,
                                      -2.75573141792967388112e-7,
                                      2.48015872888517179954e-5,
                                      -1.38888888888730564116e-3,
                                      4.16666666666665929218e-2};

// exp(x) for x clamped to [-708, 708].
template <class V>
inline typename V::f exp_lane(typename V::f x) {
    using F = typename V::f;
    x = V::min(V::set(708.0), V::max(V::set(-708.0), x));
    const F k = V::nearbyint(V::mul(x, V::set(kLog2E)));
    F r = V::fma(k, V::set(-kLn2Hi), x);
    r = V::fma(k, V::set(-kLn2Lo), r);

    const F r2 = V::mul(r, r);
    F p = V::set(kExpP[0]);
    p = V::fma(p, r2, V::set(kExpP[1]));
    p = V::fma(p, r2, V::set(kExpP[2]));
    p = V::mul(p, r);
    F q = V::set(kExpQ[0]);
    q = V::fma(q, r2, V::set(kExpQ[1]));
    q = V::fma(q, r2, V::set(kExpQ[2]));
    q = V::fma(q, r2, V::set(kExpQ[3]));
    const F e = V::fma(V::set(2.0), V::div(p, V::sub(q, p)), V::set(1.0));
    return V::mul(e, V::pow2i(k));
}

// Simultaneous sin/cos via quadrant reduction. For astronomically large
// arguments the reduction loses absolute accuracy but stays deterministic
// and identical across lanes, which is all the escape iteration needs.
template <class V>
inline void sincos_lane(typename V::f x, typename V::f& s_out, typename V::f& c_out) {
    using F = typename V::f;
    const F j = V::nearbyint(V::mul(x, V::set(kTwoOverPi)));
    F r = V::fma(j, V::set(-kPio2_1), x);
    r = V::fma(j, V::set(-kPio2_2), r);
    r = V::fma(j, V::set(-kPio2_3), r);

    const F z = V::mul(r, r);
    F sp = V::set(kSinCof[0]);
    for (int i = 1; i < 6; ++i) sp = V::fma(sp, z, V::set(kSinCof[i]));
    const F sinr = V::fma(V::mul(sp, z), r, r);

    F cp = V::set(kCosCof[0]);
    for (int i = 1; i < 6; ++i) cp = V::fma(cp, z, V::set(kCosCof[i]));
    const F cosr =
        V::fma(cp, V::mul(z, z), V::fma(V::set(-0.5), z, V::set(1.0)));

    // Quadrant q = j mod 4 in double arithmetic (exact while j < 2^52).
    const F q = V::sub(j, V::mul(V::set(4.0), V::floor(V::mul(j, V::set(0.25)))));
    const auto swap = V::cmp_ge(q, V::set(2.0));  // q in {2,3}: negate sin source
    const auto odd = V::cmp_eq(V::sub(q, V::mul(V::set(2.0), V::floor(V::mul(q, V::set(0.5))))),
                               V::set(1.0));      // q odd: swap sin/cos

    // q=0: (sinr,  cosr); q=1: (cosr, -sinr); q=2: (-sinr, -cosr); q=3: (-cosr, sinr)
    const F s_base = V::blend(odd, cosr, sinr);
    const F c_base = V::blend(odd, sinr, cosr);
    const F s_sign = V::blend(swap, V::set(-1.0), V::set(1.0));
    // cos sign: negative for q in {1,2}.
    const auto cneg = V::cmp_xor(swap, odd);
    const F c_sign = V::blend(cneg, V::set(-1.0), V::set(1.0));
    s_out = V::mul(s_base, s_sign);
    c_out = V::mul(c_base, c_sign);
}

// One application of F_{a,b}: w = a e^z + b e^{-z}.
template <class V>
inline void apply_map_lane(const EscapeParams& p, typename V::f zr, typename V::f zi,
                           typename V::f& wr, typename V::f& wi) {
    using F = typename V::f;
    const F ep = exp_lane<V>(zr);
    const F em = exp_lane<V>(V::neg(zr));
    F s, c;
    sincos_lane<V>(zi, s, c);
    // a e^z  = ep*(a_re c - a_im s) + i ep*(a_re s + a_im c)
    // b e^-z = em*(b_re c + b_im s) + i em*(b_im c - b_re s)
    const F ar = V::set(p.a_re), ai = V::set(p.a_im);
    const F br = V::set(p.b_re), bi = V::set(p.b_im);
    wr = V::add(V::mul(ep, V::sub(V::mul(ar, c), V::mul(ai, s))),
                V::mul(em, V::add(V::mul(br, c), V::mul(bi, s))));
    wi = V::add(V::mul(ep, V::add(V::mul(ar, s), V::mul(ai, c))),
                V::mul(em, V::sub(V::mul(bi, c), V::mul(br, s))));
}

template <class V>
void escape_counts_impl(const double* re, const double* im, int n,
                        const EscapeParams& p, int32_t* counts) {
    using F = typename V::f;
    const int W = V::width;
    int i = 0;
    for (; i + W <= n; i += W) {
        F zr = V::load(re + i), zi = V::load(im + i);
        F prev = V::set(1e308);  // no "increase" credit on the first step
        F inc = V::set(0.0);
        F count = V::set(0.0);
        F done = V::set(0.0);  // 1.0 once escape is certified
        for (int it = 1; it <= p.maxiter; ++it) {
            F wr, wi;
            apply_map_lane<V>(p, zr, zi, wr, wi);
            const F m2 = V::fma(wr, wr, V::mul(wi, wi));
            const auto grew = V::cmp_and(V::cmp_gt(m2, V::set(p.R2)), V::cmp_gt(m2, prev));
            inc = V::blend(grew, V::add(inc, V::set(1.0)), V::set(0.0));
            const auto big = V::cmp_gt(m2, V::set(1e300));
            const auto esc = V::cmp_or(V::cmp_ge(inc, V::set(3.0)), big);
            const auto newly = V::cmp_and(esc, V::cmp_eq(done, V::set(0.0)));
            count = V::blend(newly, V::set(double(it)), count);
            done = V::blend(newly, V::set(1.0), done);
            if (V::all_true(V::cmp_eq(done, V::set(1.0)))) break;
            // Freeze finished lanes so their state stops changing.
            const auto act = V::cmp_eq(done, V::set(0.0));
            zr = V::blend(act, wr, zr);
            zi = V::blend(act, wi, zi);
            prev = V::blend(act, m2, prev);
        }
        alignas(64) double tmp[8];
        V::store(tmp, count);
        for (int k = 0; k < W; ++k) counts[i + k] = static_cast<int32_t>(tmp[k]);
    }
    if (i < n) escape_counts_scalar(re + i, im + i, n - i, p, counts + i);
}

template <class V>
void modulus_sq_impl(const double* re, const double* im, int n, double a_re,
                     double a_im, double b_re, double b_im, double* out) {
    using F = typename V::f;
    EscapeParams p;
    p.a_re = a_re;
    p.a_im = a_im;
    p.b_re = b_re;
    p.b_im = b_im;
    const int W = V::width;
    int i = 0;
    for (; i + W <= n; i += W) {
        F wr, wi;
        apply_map_lane<V>(p, V::load(re + i), V::load(im + i), wr, wi);
        V::store(out + i, V::fma(wr, wr, V::mul(wi, wi)));
    }
    if (i < n) modulus_sq_scalar(re + i, im + i, n - i, a_re, a_im, b_re, b_im, out + i);
}

}  // namespace brush::simd::detail
