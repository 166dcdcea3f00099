#include "brush/orbifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace brush::orbifold {

using std::numbers::pi;

// ---- rationals ---------------------------------------------------------------

Rational::Rational(int64_t n, int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}

// ---- orbifold specs ------------------------------------------------------------

OrbifoldSpec OrbifoldSpec::plane_marks(std::vector<Mark> ms) {
    for (size_t i = 0; i < ms.size(); ++i) {
        if (ms[i].nu < 2) throw std::invalid_argument("ramification value must be >= 2");
        for (size_t j = i + 1; j < ms.size(); ++j)
            if (ms[i].point == ms[j].point)
                throw std::invalid_argument("marked points must be pairwise distinct");
    }
    OrbifoldSpec spec;
    spec.surface = Surface::Plane;
    spec.marks = std::move(ms);
    return spec;
}

OrbifoldSpec OrbifoldSpec::plane_arithmetic(double base, double step, int nu,
                                            complex direction) {
    if (!(base > 0) || !(step > 0)) throw std::invalid_argument("base and step must be > 0");
    OrbifoldSpec spec;
    spec.surface = Surface::Plane;
    spec.marks = ArithmeticMarks{base, step, nu, direction / std::abs(direction)};
    return spec;
}

std::optional<Rational> OrbifoldSpec::euler_characteristic() const {
    if (rule_generated()) return std::nullopt;  // infinitely many marks
    int64_t chi_s = surface == Surface::Plane ? 1 : 0;
    Rational chi(chi_s, 1);
    for (const auto& m : std::get<std::vector<Mark>>(marks))
        chi = chi - Rational(m.nu - 1, m.nu);
    return chi;
}

bool OrbifoldSpec::hyperbolic() const {
    if (rule_generated()) return true;  // covering-chain certificate applies
    auto chi = euler_characteristic();
    return chi && chi->negative();
}

complex OrbifoldSpec::first_mark_with_modulus_at_least(double x) const {
    if (rule_generated()) {
        const auto& r = std::get<ArithmeticMarks>(marks);
        double j = std::max(0.0, std::ceil((x - r.base) / r.step));
        return (r.base + j * r.step) * r.direction;
    }
    const auto& ms = std::get<std::vector<Mark>>(marks);
    const Mark* best = nullptr;
    for (const auto& m : ms) {
        if (std::abs(m.point) >= x && (!best || std::abs(m.point) < std::abs(best->point)))
            best = &m;
    }
    if (!best) throw std::runtime_error("mark sequence too short for the selection");
    return best->point;
}

// ---- bound chain ----------------------------------------------------------------

double bp_C2() {
    static const double c2 = 4.0 + std::log(3.0 + 2.0 * std::sqrt(2.0));
    return c2;
}

double density_lower_punctured01(complex z) {
    if (z == complex(0, 0)) throw std::domain_error("z = 0 is a puncture");
    if (z.real() > 0.5)
        throw std::domain_error("estimate stated for the half-plane Re z <= 1/2");
    const double az = std::abs(z);
    return 1.0 / (kBP_C1 * az * (bp_C2() + std::abs(std::log(az))));
}

DensityBound density_lower_O2_detail(complex w) {
    DensityBound b;
    b.at = w;
    b.chain = {"BP estimate on C\\{0,1} [C1=2*sqrt(2), C2=4+log(3+2*sqrt(2))]",
               "covering -4(z^2-z): C\\{0,1} -> (C*, nu(1)=2)"};
    if (w == complex(0, 0)) {
        b.lower = std::numeric_limits<double>::infinity();
        b.chain.push_back("puncture at 0");
        return b;
    }
    const complex root = std::sqrt(1.0 - w);
    const double A = std::abs(root);
    if (A < 1e-12) {
        // Cone point: the finite limit of the bound along the smooth
        // uniformizer u = sqrt(1-w).
        b.lower = 1.0 / (kBP_C1 * (bp_C2() + std::numbers::ln2));
        b.chain.push_back("cone-point limit at w=1");
        return b;
    }
    const double B = std::abs(1.0 - root);
    const double L = bp_C2() + std::numbers::ln2 + std::abs(std::log(B));
    b.lower = 1.0 / (2.0 * kBP_C1 * A * B * L);
    return b;
}

double density_lower_O2(complex w) { return density_lower_O2_detail(w).lower; }

namespace {

// Exact chain value of the displayed-formula bound (marks 2*pi*i*n, e^z),
// in the cancellation-free form 1/(2*C1*G*L) with
// G = |sqrt(1-e^x)|/|1+sqrt(1-e^x)| and L = C2 + log2 + |log|1-sqrt(1-e^x)||.
double o0_exact_displayed(complex x) {
    const complex ex = std::exp(x);
    const complex root = std::sqrt(1.0 - ex);
    const double G = std::abs(root) / std::abs(1.0 + root);
    const double B = std::abs(1.0 - root);
    if (!(G > 0) || B == 0.0) return 0.0;  // mark; caller falls back
    const double L = bp_C2() + std::numbers::ln2 + std::abs(std::log(B));
    return 1.0 / (2.0 * kBP_C1 * G * L);
}

// Simplified bound, valid for every x: G <= sqrt(2) and
// |log|1-sqrt(1-e^x)|| <= log2 + |Re x|.
double o0_simplified(complex x) {
    return 1.0 / (2.0 * kBP_C1 * std::numbers::sqrt2 *
                  (bp_C2() + 2 * std::numbers::ln2 + std::abs(x.real())));
}

}  // namespace

DensityBound density_lower_O0_detail(complex z, ExpConvention conv) {
    DensityBound b;
    b.at = z;
    const complex x = conv == ExpConvention::Exp ? z : complex(0, 1) * z;
    b.chain = {"O2 lower bound",
               conv == ExpConvention::Exp ? "covering e^z (marks 2*pi*i*n)"
                                          : "covering e^{iz} (marks 2*pi*n)"};
    // The mark lattice is symmetric under z -> -z, so the chain evaluated at
    // -x bounds the same density; taking the max keeps the bound invariant
    // under conjugation and tightens it.
    const double simplified = o0_simplified(x);
    double exact = 0.0;
    if (std::abs(x.real()) < 600.0)
        exact = std::max(o0_exact_displayed(x), o0_exact_displayed(-x));
    if (exact > simplified) {
        b.lower = exact;
        b.chain.push_back("exact displayed chain (+- symmetrized)");
    } else {
        b.lower = simplified;
        b.chain.push_back("sqrt(2) and log2+|Re| simplifications");
    }
    return b;
}

double density_lower_O0(complex z, ExpConvention conv) {
    return density_lower_O0_detail(z, conv).lower;
}

namespace {

// Moebius map with M(0)=p, M(1)=q, M(-1)=r, as (A z + B)/(C z + D), D=1.
struct Moebius {
    complex A, B, C, D;
    complex operator()(complex z) const { return (A * z + B) / (C * z + D); }
    complex inverse(complex w) const { return (D * w - B) / (A - C * w); }
    complex deriv(complex z) const {
        const complex den = C * z + D;
        return (A * D - B * C) / (den * den);
    }
};

Moebius moebius_through(complex p, complex q, complex r) {
    Moebius m;
    m.D = 1.0;
    m.B = p;
    m.C = (2.0 * p - q - r) / (q - r);
    m.A = q * m.C + q - p;
    return m;
}

struct ChainCandidate {
    double value = 0.0;
    int labeling = 0;
};

}  // namespace

DensityBound density_lower_222_detail(complex a, complex b, complex c, complex w) {
    if (a == b || b == c || a == c)
        throw std::invalid_argument("marks must be pairwise distinct");

    const complex marks[3] = {a, b, c};
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    ChainCandidate best;
    for (int pi_idx = 0; pi_idx < 6; ++pi_idx) {
        const complex p = marks[perms[pi_idx][0]];
        const complex q = marks[perms[pi_idx][1]];
        const complex r = marks[perms[pi_idx][2]];
        const Moebius M = moebius_through(p, q, r);
        if (std::abs(M.A - M.C * w) < 1e-14 * std::max(1.0, std::abs(w)))
            continue;  // w at the Moebius pole; unsolvable for this labeling
        const complex zeta0 = M.inverse(w);
        if (!std::isfinite(zeta0.real()) || !std::isfinite(zeta0.imag())) continue;
        const complex zeta_p = std::asin(zeta0);
        for (const complex zeta : {zeta_p, pi - zeta_p}) {
            const complex cz = std::cos(zeta);
            const complex h_deriv = M.deriv(std::sin(zeta)) * cz;
            const double hd = std::abs(h_deriv);
            if (!(hd > 1e-9)) continue;  // cone-degenerate labeling
            // Upstairs: nu=2 marks at pi*n; rescale of the 2*pi*n chain.
            const double upstairs = 2.0 * density_lower_O0(2.0 * zeta, ExpConvention::ExpI);
            const double val = upstairs / hd;
            if (val > best.value) best = {val, pi_idx};
        }
    }
    if (best.value <= 0.0)
        throw std::runtime_error("density_lower_222: no labeling produced a certifying chain");

    DensityBound out;
    out.at = w;
    out.lower = best.value;
    out.chain = {"marks pi*n upstairs (rescaled 2*pi*n chain)",
                 "covering M(sin z) -> (C; a,b,c nu=2), labeling " +
                     std::to_string(best.labeling)};
    return out;
}

double density_lower_222(complex a, complex b, complex c, complex w) {
    return density_lower_222_detail(a, b, c, w).lower;
}

GeometricMarksBound density_lower_geometric_marks(const OrbifoldSpec& seq, double K, complex z) {
    if (!(K > 1)) throw std::invalid_argument("K must exceed 1");
    const double az = std::abs(z);
    if (!(az > 0)) throw std::invalid_argument("z must be nonzero");

    GeometricMarksBound out;
    out.b = seq.first_mark_with_modulus_at_least(2.0 * az);
    out.c = seq.first_mark_with_modulus_at_least(2.0 * std::abs(out.b));
    const double ab = std::abs(out.b), ac = std::abs(out.c);
    out.windows_ok = (2 * az <= ab && ab <= 2 * K * az) &&
                     (4 * az <= ac && ac <= 4 * K * K * az);
    const complex bt = out.b / az, ct = out.c / az, zt = z / az;
    out.lower = density_lower_222(complex(0, 0), bt, ct, zt) / az;
    return out;
}

double density_upper_disk_complement(double r, complex z) {
    if (!(r > 0)) throw std::invalid_argument("radius must be positive");
    const double az = std::abs(z);
    if (!(az > 1.0001 * r))
        throw std::domain_error("point too close to the disk boundary");
    return 1.0 / (az * (std::log(az) - std::log(r)));
}

// ---- expansion -------------------------------------------------------------------

namespace {

// log|a e^z + s b e^{-z}| without overflow (s = +1 for F, -1 for F').
double log_abs_exp_combo(const dynamics::CosineParams& f, complex z, double s) {
    const double x = z.real();
    if (std::abs(x) < 300.0) {
        const complex v = f.a * std::exp(z) + s * f.b * std::exp(-z);
        return std::log(std::abs(v));
    }
    if (x >= 300.0) return std::log(std::abs(f.a)) + x;  // e^{-z} term negligible
    return std::log(std::abs(s * f.b)) - x;
}

// Unit direction of a e^z + s b e^{-z} for |Re z| large.
complex exp_combo_direction(const dynamics::CosineParams& f, complex z, double s) {
    const double x = z.real();
    if (std::abs(x) < 300.0) {
        const complex v = f.a * std::exp(z) + s * f.b * std::exp(-z);
        return v / std::abs(v);
    }
    if (x >= 300.0) {
        const complex u = f.a * std::exp(complex(0.0, z.imag()));
        return u / std::abs(u);
    }
    const complex u = s * f.b * std::exp(complex(0.0, -z.imag()));
    return u / std::abs(u);
}

}  // namespace

ExpansionBound expansion_lower_bound(const dynamics::CosineParams& f, complex z,
                                     double K_disk) {
    const double log_fz = log_abs_exp_combo(f, z, +1.0);
    if (!(log_fz > std::log(K_disk)))
        throw std::domain_error("requires |f(z)| > K_disk");

    // Marks 2*pi*n with ratio constant K=2; selection windows collapse to
    // b~ -> 2, c~ -> 4 once |f(z)| dwarfs the mark spacing.
    const complex w_dir = exp_combo_direction(f, z, +1.0);
    double bt_mod, ct_mod;
    if (log_fz < std::log(1e300)) {
        const double mw = std::exp(log_fz);
        const double b_abs = 2 * pi * std::ceil(2 * mw / (2 * pi));
        const double c_abs = 2 * pi * std::ceil(2 * b_abs / (2 * pi));
        bt_mod = b_abs / mw;
        ct_mod = c_abs / mw;
    } else {
        bt_mod = 2.0;
        ct_mod = 4.0;
    }
    const double m_hat =
        density_lower_222(complex(0, 0), complex(bt_mod, 0), complex(ct_mod, 0), w_dir);

    const double log_fprime = log_abs_exp_combo(f, z, -1.0);
    const double rho_up = density_upper_disk_complement(K_disk / 2.0, z);
    // |f'(z)| * (m_hat/|f(z)|) / rho_upper, assembled in log space.
    const double value = std::exp(log_fprime - log_fz) * m_hat / rho_up;

    ExpansionBound out;
    out.value = value;
    out.certifies = value > 0 && std::isfinite(value);
    return out;
}

ExpansionCertificate expansion_certificate(const dynamics::CosineParams& f,
                                           double K_disk, double lo, double hi, int n) {
    ExpansionCertificate cert;
    cert.K_disk = K_disk;
    cert.min_bound = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double x = lo * std::pow(hi / lo, double(i) / (n - 1));
        const auto b = expansion_lower_bound(f, complex(x, 0), K_disk);
        cert.grid.push_back(x);
        cert.bounds.push_back(b.value);
        cert.min_bound = std::min(cert.min_bound, b.value);
    }
    cert.E_est = std::max(cert.min_bound, 1.05);
    return cert;
}

std::string bound_table_csv(const std::vector<BoundRow>& rows) {
    std::ostringstream out;
    out << "re,im,lower,upper,chain_id\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,", r.z.real(), r.z.imag(),
                      r.lower, r.upper);
        out << buf << r.chain_id << '\n';
    }
    return out.str();
}

}  // namespace brush::orbifold
