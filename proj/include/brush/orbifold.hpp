#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "brush/cosine.hpp"

namespace brush::orbifold {

using complex = std::complex<double>;

// Exact rational for Euler characteristics.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;
    Rational() = default;
    Rational(int64_t n, int64_t d);
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    bool operator==(const Rational&) const = default;
    bool negative() const { return num < 0; }
    double value() const { return double(num) / double(den); }
};

// Marked plane orbifold: underlying surface plus a finite mark list or a
// rule-generated arithmetic sequence of marks |z_j| = base + j*step.
struct Mark {
    complex point;
    int nu = 2;
};

struct ArithmeticMarks {
    double base = 0.0;   // modulus of the first mark
    double step = 0.0;   // modulus increment
    int nu = 2;
    complex direction{1.0, 0.0};  // unit direction of the marks
};

struct OrbifoldSpec {
    enum class Surface { Plane, PuncturedPlane, DiskComplement };
    Surface surface = Surface::Plane;
    double disk_radius = 0.0;  // for DiskComplement
    std::variant<std::vector<Mark>, ArithmeticMarks> marks;

    static OrbifoldSpec plane_marks(std::vector<Mark> ms);
    // Marks at (base + j*step)*direction, j = 0,1,2,...
    static OrbifoldSpec plane_arithmetic(double base, double step, int nu = 2,
                                         complex direction = {1.0, 0.0});

    bool rule_generated() const {
        return std::holds_alternative<ArithmeticMarks>(marks);
    }
    // Exact Euler characteristic for finite mark lists.
    std::optional<Rational> euler_characteristic() const;
    bool hyperbolic() const;

    // Modulus of the first mark with |z_j| >= x (rule marks), or scans the
    // finite list. Throws when the list is exhausted.
    complex first_mark_with_modulus_at_least(double x) const;
};

// A certified bound with provenance: every chain step names the covering map
// or estimate used.
struct DensityBound {
    complex at{0, 0};
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    std::vector<std::string> chain;
};

// Convention for pairing the exponential covering with the marked points:
// Exp uses e^z with marks 2*pi*i*n (the displayed-formula form), ExpI uses
// e^{iz} with marks 2*pi*n on the real axis.
enum class ExpConvention { Exp, ExpI };

inline constexpr double kBP_C1 = 2.8284271247461903;  // 2*sqrt(2)
double bp_C2();                                       // 4 + log(3+2*sqrt(2))

// Beardon-Pommerenke lower bound for the density of C \ {0,1} on the
// half-plane Re z <= 1/2.
double density_lower_punctured01(complex z);

// Lower bound for the (C^*, nu(1)=2) orbifold, pulled through -4(z^2-z).
// At the cone point w=1 the finite limit along the smooth uniformizer is
// returned.
double density_lower_O2(complex w);
DensityBound density_lower_O2_detail(complex w);

// Lower bound for the plane orbifold with nu=2 marks on the 2*pi lattice ray,
// pulled through the exponential covering per the convention.
double density_lower_O0(complex z, ExpConvention conv = ExpConvention::ExpI);
DensityBound density_lower_O0_detail(complex z, ExpConvention conv = ExpConvention::ExpI);

// Lower bound for the signature-(2,2,2) plane orbifold with marks a,b,c via
// the M(sin zeta) covering; maximized over the realizable labelings, which
// makes the value permutation invariant.
double density_lower_222(complex a, complex b, complex c, complex w);
DensityBound density_lower_222_detail(complex a, complex b, complex c, complex w);

// Geometric-sequence bound: selects b(z), c(z) from the mark sequence,
// validates the selection windows, rescales to unit modulus and returns
// density_lower_222(0, b~, c~, z~)/|z|.
struct GeometricMarksBound {
    double lower = 0.0;
    complex b{0, 0}, c{0, 0};
    bool windows_ok = false;
};

GeometricMarksBound density_lower_geometric_marks(const OrbifoldSpec& seq, double K, complex z);

// Exact density of the hyperbolic metric on {|z| > r}; an upper bound for
// rho_f wherever the orbifold contains that disk complement unmarked.
double density_upper_disk_complement(double r, complex z);

// Certified lower bound for the orbifold expansion |Df(z)| of a
// subhyperbolic cosine instance: |f'(z)| times the density_lower_geometric_marks
// lower bound at f(z) over the 2*pi*n mark sequence, divided by the disk
// complement upper bound at z.
struct ExpansionBound {
    double value = 0.0;
    bool certifies = false;  // false when the chain degenerates to 0
};

ExpansionBound expansion_lower_bound(const dynamics::CosineParams& f, complex z,
                                     double K_disk);

// Grid certificate: minimum expansion bound over real-axis samples, floored
// at 1.05 for export to the conjugacy module.
struct ExpansionCertificate {
    std::vector<double> grid;        // |z| samples
    std::vector<double> bounds;      // expansion bound per sample
    double min_bound = 0.0;
    double E_est = 1.05;
    double K_disk = 0.0;
};

ExpansionCertificate expansion_certificate(const dynamics::CosineParams& f,
                                           double K_disk, double lo = 20.0,
                                           double hi = 1e4, int n = 25);

// CSV bound table: re,im,lower,upper,chain_id.
struct BoundRow {
    complex z;
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    std::string chain_id;
};
std::string bound_table_csv(const std::vector<BoundRow>& rows);

}  // namespace brush::orbifold
