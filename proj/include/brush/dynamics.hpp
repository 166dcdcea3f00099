#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brush/cosine.hpp"
#include "brush/model.hpp"
#include "brush/strips.hpp"

namespace brush::dynamics {

using model::ExternalAddress;

// ---- escape classification ------------------------------------------------

enum class EscapeKind { Escaping, Bounded, Undecided };

struct EscapeResult {
    EscapeKind kind = EscapeKind::Undecided;
    int n = 0;  // for Escaping: step at which escape was certified
};

// Escaping(n) once the modulus exceeds R and has grown monotonically for
// three consecutive steps beyond R; Bounded only for orbits staying <= R
// through maxiter; Undecided otherwise. Requires R > max(|v1|,|v2|) + 1.
EscapeResult escape_classify(const CosineParams& f, complex z, double R, int maxiter);

// ---- ray tracing ------------------------------------------------------------

struct RayPoint {
    double t = 0.0;
    complex z{0.0, 0.0};
    double residual = 0.0;  // |z_depth - z_depth/2| at convergence
    int depth = 0;
};

struct RayTrace {
    ExternalAddress address;
    std::vector<RayPoint> samples;        // sorted by decreasing t
    std::optional<complex> landing;
    std::vector<double> residuals;
};

struct RayError : std::runtime_error {
    std::vector<double> residual_history;
    RayError(const std::string& what, std::vector<double> hist = {})
        : std::runtime_error(what), residual_history(std::move(hist)) {}
};

// Traces the ray point gamma_s(t): starts on the midline of strip S_{s_depth}
// at real-part magnitude T(M^depth(s,t)) (saturated at a representability
// cap) and pulls back through the address strips; the depth is doubled until
// consecutive results differ by less than tol, capped at 64.
RayPoint trace_ray(const CosineParams& f, const ExternalAddress& s, double t,
                   int depth = 8, double tol = 1e-11);

// Ray samples on a decreasing-t grid, plus strip-guard validation.
RayTrace trace_ray_grid(const CosineParams& f, const ExternalAddress& s,
                        const std::vector<double>& ts, double tol = 1e-11);

// Landing point: trace at t decreasing to t_s and extrapolate (iterated
// Aitken on a geometric tail); estimated error below tol or RayError.
struct LandingResult {
    complex z{0.0, 0.0};
    double error_estimate = 0.0;
};

LandingResult landing_point(const CosineParams& f, const ExternalAddress& s, double tol = 1e-7);

// ---- certificates and auxiliary constructions ------------------------------

struct DisjointTypeCertificate {
    bool ok = false;
    double radius = 0.0;
    double max_modulus = 0.0;   // sampled boundary max plus padding
    double padding = 0.0;
    double margin = 0.0;        // r - max_modulus
    bool singular_values_inside = false;
};

// True iff both singular values lie in D_r(0) and max_{|z|=r}|F(z)| < r
// (dense boundary sampling plus a derivative-bound padding term).
DisjointTypeCertificate certify_disjoint_type(const CosineParams& f, double r,
                                              int samples = 4096);

// Maximum of |F| over |z - center| = r by n-point sampling (no padding).
double boundary_max_modulus(const CosineParams& f, complex center, double r, int n = 4096);

// ---- address realizability (real sinh family) -------------------------------
// Strip S_n maps onto the right half-plane when (n even, side R) or
// (n odd, side L), so the side of each address entry is forced by its
// predecessor. Addresses violating the chain carry no ray.

Symbol::Side forced_next_side(Symbol s);
bool address_realizable(const ExternalAddress& s);

// Random eventually periodic address satisfying the side chain, with entry
// indices bounded by max_abs_index.
ExternalAddress random_realizable_address(uint64_t seed, int preperiod_len,
                                          int period_len, int max_abs_index);

struct MarkedPreimageSequence {
    std::vector<complex> points;  // sorted by modulus, strictly increasing
    double ratio_bound = 1.0;     // max |z_{i+1}| / |z_i|
};

// `count` preimages of p from one log-branch family z = Log(root) + 2*pi*i*k,
// plus the achieved modulus-ratio bound. Throws on critical p.
MarkedPreimageSequence marked_preimage_sequence(const CosineParams& f, complex p,
                                                Symbol::Side tract_side, int count);

struct FundamentalDomainSplit {
    CosineParams params;
    double disk_radius = 0.0;
    DisjointTypeCertificate certificate;

    // Fundamental-domain label of an escaping query point: its strip symbol.
    // Throws std::domain_error for points inside D or its preimage.
    StripIndex label(complex z) const;
};

FundamentalDomainSplit fundamental_domain_split(const CosineParams& f, double D_radius);

// CSV export for a traced ray: t,re,im,residual.
std::string ray_csv(const RayTrace& ray);

}  // namespace brush::dynamics
