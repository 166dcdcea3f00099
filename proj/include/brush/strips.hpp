#pragma once

#include <optional>
#include <stdexcept>

#include "brush/address.hpp"
#include "brush/cosine.hpp"

namespace brush::dynamics {

using model::Symbol;

// Horizontal half-strip S_{n_L} = {Re z < 0, Im z in ((n-1/2)pi, (n+1/2)pi)}
// or S_{n_R} (Re z > 0). The family maps each strip conformally onto a left
// or right half-plane.
struct StripIndex {
    Symbol symbol;
    bool operator==(const StripIndex&) const = default;
};

struct StripBoundaryError : std::runtime_error {
    StripIndex below, above;  // nearest strips on either side
    StripBoundaryError(const std::string& what, StripIndex lo, StripIndex hi)
        : std::runtime_error(what), below(lo), above(hi) {}
};

// Unique containing strip; throws StripBoundaryError on Re z = 0 or
// Im z on a half-integer multiple of pi (within guard).
StripIndex strip_of(complex z, double guard = 0.0);

// Midline representative of a strip at real-part magnitude r >= 0.
complex strip_midline_point(StripIndex s, double r);

struct BranchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InverseBranchResult {
    complex z;
    double residual = 0.0;          // |evaluate(f,z) - w| relative
    bool near_critical = false;     // conditioning warning
};

// The unique z in strip s with evaluate(f,z) = w, via the quadratic in e^z
// with the log branch selected so z lands in S_s. Throws BranchError when
// no root lands in the strip (w on a cut / wrong half-plane).
InverseBranchResult inverse_branch(const CosineParams& f, StripIndex s, complex w);

// All preimages z = log(root) + 2*pi*i*k of w for one root family,
// k = 0..count-1 (used for marked preimage sequences).
std::vector<complex> log_branch_family(const CosineParams& f, complex w, int count);

// Domains U_{(n,0)} = {Re<0, Im in (2n pi, 2(n+1) pi)} and U_{(n,1)} (Re>0)
// of height 2*pi; these govern itineraries and pinching.
struct UDomain {
    int64_t n = 0;
    int k = 0;  // 0: left half-plane, 1: right half-plane
    bool operator==(const UDomain&) const = default;
};

// Distance from z to the boundary of its U-domain (for ambiguity guards).
double u_domain_margin(complex z);

UDomain u_domain_of(complex z, double guard = 0.0);

}  // namespace brush::dynamics
