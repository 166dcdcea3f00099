#pragma once

#include <vector>

#include "brush/dynamics.hpp"
#include "brush/orbifold.hpp"

namespace brush::conjugacy {

using dynamics::complex;
using dynamics::CosineParams;
using model::ExternalAddress;

// Constants of the construction: K with P(f) u C inside {|z|<K/2}, L with
// f^{-1}({|z|>L}) inside {|z|>K+1}, mu = K/L, and the disjoint-type partner
// g(z) = f(mu z). G is the rescaled representative mu*g(z/mu) = pi*mu*sinh
// living at J(G) = mu*J(g) scale.
struct ConjugacyConfig {
    double K = 0.0;
    double L = 0.0;
    double mu = 0.0;
    CosineParams f;
    CosineParams G;  // conjugate of g at mu-scale, in the cosine family
    double E_est = 1.05;
    dynamics::DisjointTypeCertificate g_certificate;

    complex g(complex z) const { return evaluate(f, mu * z); }
};

ConjugacyConfig build_config(const CosineParams& f, double K = 8.0);

// A J(g) sample: the traced G-ray point at model potential t, rescaled.
struct EscapingSample {
    ExternalAddress address;
    double t = 0.0;
    complex z{0, 0};    // point of J(g)
    complex u0{0, 0};   // mu*z, point of J(G)
};

std::vector<EscapingSample> make_samples(const ConjugacyConfig& cfg, int count,
                                         uint64_t seed);

// phi_1..phi_{jmax+1} at a sample plus the Cauchy increments and the
// commutation residuals |f(phi_{j+1}(z)) - phi_j(g(z))|.
struct PhiIterates {
    std::vector<complex> phi;          // phi[j-1] = phi_j(z), j = 1..jmax+1
    std::vector<double> d;             // d[j-1] = |phi_{j+1}(z)-phi_j(z)|, j = 1..jmax
    std::vector<double> commutation;   // same indexing as d
};

PhiIterates phi_iterates(const ConjugacyConfig& cfg, const EscapingSample& s, int jmax);

// Single phi_j(z) with diagnostics (curve-pullback construction).
struct PhiResult {
    complex value{0, 0};
    double d_prev = 0.0;              // |phi_j - phi_{j-1}|
    double commutation_residual = 0.0;
};

PhiResult phi_iterate(const ConjugacyConfig& cfg, const EscapingSample& s, int j,
                      double tol = 1e-9);

struct SampleReport {
    complex z;
    std::vector<double> d;
    double commutation_residual = 0.0;  // max over j
    double fitted_ratio = 0.0;          // geometric fit of d_j over j >= 2
    bool monotone_tail = true;
};

struct ConvergenceReport {
    double K = 0, L = 0, mu = 0;
    std::vector<SampleReport> samples;
    double fitted_ratio = 0.0;      // worst fitted ratio across samples
    double max_commutation = 0.0;
    double sup_sum_d = 0.0;         // sup over samples of sum_j d_j
    double alpha = 0.0;             // (1/K) log(|log mu|/log 2 + 1)
    double budget = 0.0;            // alpha * E/(E-1)
};

ConvergenceReport convergence_report(const ConjugacyConfig& cfg,
                                     const std::vector<EscapingSample>& samples,
                                     int jmax);

// |phi_j(z) - phi_j(z~)| > separation for pairs with distinct addresses.
struct ProbeResult {
    bool all_separated = true;
    double min_separation = 0.0;
};

ProbeResult injectivity_probe(const ConjugacyConfig& cfg,
                              const std::vector<std::pair<EscapingSample, EscapingSample>>& pairs,
                              int j, double separation = 1e-6);

std::string convergence_report_json(const ConvergenceReport& rep);

}  // namespace brush::conjugacy
