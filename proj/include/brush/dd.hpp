#pragma once

#include <cmath>

namespace brush {

// Double-double value hi+lo with |lo| <= ulp(hi)/2; roughly 32 significant
// digits. Only the operations the jet propagation needs.
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    dd(double x) : hi(x), lo(0.0) {}
    dd(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

namespace dd_detail {

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline dd operator+(dd a, dd b) {
    dd s = dd_detail::two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = dd_detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
    const double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    const double q2 = (r.hi + r.lo) / b.hi;
    r = r - b * dd(q2);
    const double q3 = (r.hi + r.lo) / b.hi;
    return dd_detail::quick_two_sum(q1, q2) + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { return a = a + b; }
inline dd& operator-=(dd& a, dd b) { return a = a - b; }
inline dd& operator*=(dd& a, dd b) { return a = a * b; }

inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline double abs_val(dd a) { return std::abs(a.hi + a.lo); }

inline dd dd_sqrt(dd a) {
    // One Newton step on a double seed doubles the precision.
    const double s0 = std::sqrt(a.hi);
    const dd s(s0);
    return (s + a / s) * dd(0.5);
}

}  // namespace brush
