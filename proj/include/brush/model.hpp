#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "brush/address.hpp"

namespace brush::model {

// A point of S^N x [0,inf): combinatorial address plus potential t >= 0.
// Membership in the brush X-bar is a predicate, not a type invariant.
struct ModelPoint {
    ExternalAddress address;
    double t = 0.0;
};

// Growth model F(t) = e^t - 1 and its inverse F^{-1}(x) = log(1+x).
inline double growth_F(double t) { return std::expm1(t); }
inline double growth_F_inv(double x) { return std::log1p(x); }

// Complexified view C(s,t) = t + 2*pi*i*s0 and projection T(s,t) = t.
std::complex<double> complexify(const ModelPoint& p);

// One step of the model map M(s,t) = (sigma(s), F(t) - pi*|s1|).
// When the new potential is negative the point has left X-bar and the
// step reports the offending value instead.
struct ModelStep {
    std::optional<ModelPoint> next;   // engaged iff the step stayed in t >= 0
    double new_potential = 0.0;       // F(t) - pi*|s1|, also when negative
    bool rejected() const { return !next.has_value(); }
};

ModelStep apply_model_map(const ModelPoint& p);

// Endpoint potential t_s of an eventually periodic address, by backward
// fixed-point iteration t_i = F^{-1}(t_{i+1} + pi*|s_{i+1}|): the periodic
// tail is iterated in period blocks from seed 0 until successive block
// values differ by less than tol, then the preperiod is unrolled.
struct PotentialBoundaryResult {
    double t_s = 0.0;
    int block_iterations = 0;
    bool converged = false;
    double last_delta = 0.0;
};

PotentialBoundaryResult potential_boundary(const ExternalAddress& s, double tol = 1e-9);

// Convenience: the converged value, throwing on failure.
double potential_boundary_value(const ExternalAddress& s, double tol = 1e-9);

enum class BrushVerdict { InX, InXbarOnly, NotInXbar };

struct MembershipResult {
    BrushVerdict verdict = BrushVerdict::InXbarOnly;
    int steps = 0;            // steps taken until decision (or depth)
    bool undecided = false;   // depth exhausted without escape or rejection
};

// Iterates the model map up to `depth` times. NotInXbar on first rejection;
// InX once the potential exceeds the escape threshold; InXbarOnly otherwise.
MembershipResult brush_membership(const ModelPoint& p, int depth);

// Potential beyond which escape is certain for any representable tail
// (F-iterates from here dominate every periodic penalty pi*|s| with
// |s| <= 1e6).
inline constexpr double kEscapeThreshold = 50.0;

// Ordering verdict for address_compare.
enum class Order { Less, Equal, Greater };
Order address_compare(const ExternalAddress& a, const ExternalAddress& b);

std::string verdict_name(BrushVerdict v);

// CSV export row for brush samples: address (canonical text), t, verdict.
struct BrushSample {
    ExternalAddress address;
    double t = 0.0;
    BrushVerdict verdict = BrushVerdict::InXbarOnly;
};

std::string brush_samples_csv(const std::vector<BrushSample>& rows);

}  // namespace brush::model
