#pragma once

#include <complex>
#include <numbers>
#include <utility>

namespace brush::dynamics {

using complex = std::complex<double>;

// Parameters of F_{a,b}(z) = a e^z + b e^{-z}, a,b != 0.
struct CosineParams {
    complex a{1.0, 0.0};
    complex b{1.0, 0.0};

    // f(z) = pi*sinh z.
    static CosineParams pi_sinh() {
        return {complex(std::numbers::pi / 2, 0), complex(-std::numbers::pi / 2, 0)};
    }
    // g_lambda(z) = lambda*sinh z; of disjoint type for small lambda > 0.
    static CosineParams disjoint_sinh(double lambda) {
        return {complex(lambda / 2, 0), complex(-lambda / 2, 0)};
    }

    bool real_sinh_family() const {
        return a.imag() == 0 && b.imag() == 0 && a.real() > 0 && b.real() == -a.real();
    }
    double sinh_lambda() const { return 2 * a.real(); }
};

inline complex evaluate(const CosineParams& f, complex z) {
    return f.a * std::exp(z) + f.b * std::exp(-z);
}

inline complex derivative(const CosineParams& f, complex z) {
    return f.a * std::exp(z) - f.b * std::exp(-z);
}

// The two critical values +-2*sqrt(ab) (no asymptotic values in this family).
inline std::pair<complex, complex> singular_values(const CosineParams& f) {
    complex v = 2.0 * std::sqrt(f.a * f.b);
    return {v, -v};
}

}  // namespace brush::dynamics
