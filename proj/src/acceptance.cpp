#include "brush/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "brush/conjugacy.hpp"
#include "brush/dynamics.hpp"
#include "brush/orbifold.hpp"
#include "brush/pinching.hpp"
#include "brush/poincare.hpp"
#include "brush/render.hpp"

namespace brush::accept {

using std::numbers::pi;
using complex = std::complex<double>;

namespace {

struct Check {
    std::ostringstream detail;
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

CriterionResult finish(const std::string& name, Check& c) {
    CriterionResult r;
    r.name = name;
    r.passed = c.ok;
    r.detail = c.detail.str();
    return r;
}

// Model-level random eventually periodic address with a nonzero entry in
// the period (so that t_s is safely positive).
model::ExternalAddress random_model_address(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> plen(1, 5), pre(0, 2), idx(-3, 3), coin(0, 1);
    auto sym = [&] {
        return model::Symbol{idx(rng), coin(rng) ? model::Symbol::Side::R
                                                 : model::Symbol::Side::L};
    };
    std::vector<model::Symbol> w(plen(rng));
    for (auto& s : w) s = sym();
    bool nonzero = false;
    for (auto& s : w) nonzero |= s.index != 0;
    if (!nonzero) w[0].index = 1 + coin(rng);
    std::vector<model::Symbol> p(pre(rng));
    for (auto& s : p) s = sym();
    return model::ExternalAddress(std::move(p), std::move(w));
}

}  // namespace

CriterionResult model_endpoints() {
    Check c;

    // t_s of the all-zero address is exactly 0.
    const auto zero = model::ExternalAddress::periodic({model::sym_R(0)});
    c.require(model::potential_boundary_value(zero) == 0.0, "t_s((0R)~) == 0 exactly");

    // t_s((1R)~) against the 60-step fixed-point oracle of t = log(1+pi+t).
    double oracle = 0.0;
    for (int i = 0; i < 60; ++i) oracle = std::log(1.0 + pi + oracle);
    const auto oneR = model::ExternalAddress::periodic({model::sym_R(1)});
    const double ts1 = model::potential_boundary_value(oneR, 1e-12);
    c.detail << "t_s((1R)~)=" << ts1 << " oracle=" << oracle << "; ";
    c.require(std::abs(ts1 - oracle) < 1e-6, "t_s((1R)~) matches oracle to 1e-6");

    // Trichotomy around t_s +- 1e-3 on 100 random addresses.
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int i = 0; checked < 100 && i < 1000; ++i) {
        const auto addr = random_model_address(rng);
        const double ts = model::potential_boundary_value(addr, 1e-10);
        if (ts < 2e-3) continue;
        ++checked;
        const auto above = model::brush_membership({addr, ts + 1e-3}, 4000);
        c.require(above.verdict != model::BrushVerdict::NotInXbar,
                  "above t_s never NotInXbar (" + model::to_string(addr) + ")");
        const auto below = model::brush_membership({addr, ts - 1e-3}, 4000);
        c.require(below.verdict == model::BrushVerdict::NotInXbar,
                  "below t_s always NotInXbar (" + model::to_string(addr) + ")");
    }
    c.detail << "trichotomy addresses checked=" << checked << "; ";
    c.require(checked == 100, "100 addresses with t_s above the band");
    return finish("model-endpoints", c);
}

CriterionResult semiconjugacy() {
    Check c;
    const auto f = dynamics::CosineParams::pi_sinh();
    const auto cfg = conjugacy::build_config(f);
    c.detail << "K=" << cfg.K << " L=" << cfg.L << " mu=" << cfg.mu << "; ";
    c.require(cfg.K == 8.0 && cfg.L == 12729.0, "config constants K=8, L=12729");
    c.require(std::abs(cfg.mu - 6.2849e-4) < 1e-7, "mu ~ 6.2849e-4");

    const auto samples = conjugacy::make_samples(cfg, 200, 20240);
    const auto rep = conjugacy::convergence_report(cfg, samples, 12);
    c.detail << "max_comm=" << rep.max_commutation
             << " worst_ratio=" << rep.fitted_ratio << "; ";
    c.require(rep.max_commutation < 1e-8, "commutation residual < 1e-8");
    for (const auto& s : rep.samples)
        if (!(s.fitted_ratio < 0.9)) {
            c.require(false, "fitted geometric ratio < 0.9 for every sample");
            break;
        }

    // Injectivity probe on 20 pairs with distinct addresses.
    std::vector<std::pair<conjugacy::EscapingSample, conjugacy::EscapingSample>> pairs;
    for (size_t i = 0; i + 1 < samples.size() && pairs.size() < 20; i += 2) {
        if (samples[i].address == samples[i + 1].address) continue;
        pairs.emplace_back(samples[i], samples[i + 1]);
    }
    const auto probe = conjugacy::injectivity_probe(cfg, pairs, 8, 1e-6);
    c.detail << "pairs=" << pairs.size() << " min_sep=" << probe.min_separation << "; ";
    c.require(pairs.size() >= 20, "20 distinct-address pairs");
    c.require(probe.all_separated, "injectivity separation > 1e-6");
    return finish("semiconjugacy", c);
}

CriterionResult rays_and_pinching() {
    Check c;
    const auto f = dynamics::CosineParams::pi_sinh();
    const auto zero = model::ExternalAddress::periodic({model::sym_R(0)});

    // The (0R)~ ray is the positive real axis.
    for (int k = 1; k <= 10; ++k) {
        const auto p = dynamics::trace_ray(f, zero, 0.5 * k);
        c.require(std::abs(p.z.imag()) < 1e-9, "|Im| < 1e-9 on the (0R)~ ray");
    }
    const auto land0 = dynamics::landing_point(f, zero, 1e-7);
    c.detail << "landing((0R)~)=" << std::abs(land0.z) << "; ";
    c.require(std::abs(land0.z) < 1e-6, "landing((0R)~) = 0 within 1e-6");

    // Five pinched pairs from the quadruple lists land together within 1e-6
    // (instances with n >= 1; at n = 0 the four rays split across the two
    // regular preimages of the critical chain).
    const auto ql = model::quadruple_left({}, 0, 1);
    const auto qr = model::quadruple_right({}, 0, 1);
    std::vector<std::pair<model::ExternalAddress, model::ExternalAddress>> pinched_pairs = {
        {ql[0], ql[1]}, {ql[0], ql[2]}, {ql[1], ql[3]}, {qr[0], qr[1]}, {qr[2], qr[3]}};
    double worst_join = 0.0;
    for (const auto& [s1, s2] : pinched_pairs) {
        c.require(model::pinched(s1, s2, f, 16) == model::Pinched::Yes,
                  "quadruple pair classified pinched");
        const auto l1 = dynamics::landing_point(f, s1, 1e-7);
        const auto l2 = dynamics::landing_point(f, s2, 1e-7);
        worst_join = std::max(worst_join, std::abs(l1.z - l2.z));
    }
    c.detail << "max pinched-pair gap=" << worst_join << "; ";
    c.require(worst_join < 1e-6, "pinched pairs land together within 1e-6");

    // Five non-pinched pairs land apart by more than 1e-3.
    auto per = [](std::vector<model::Symbol> w) {
        return model::ExternalAddress::periodic(std::move(w));
    };
    std::vector<std::pair<model::ExternalAddress, model::ExternalAddress>> apart_pairs = {
        {per({model::sym_R(2)}), per({model::sym_R(4)})},
        {per({model::sym_R(2)}), per({model::sym_L(2)})},
        {per({model::sym_R(-2)}), per({model::sym_R(2)})},
        {per({model::sym_R(0)}), per({model::sym_R(2)})},
        {per({model::sym_L(2)}), per({model::sym_L(4)})}};
    double min_gap = 1e300;
    for (const auto& [s1, s2] : apart_pairs) {
        const auto l1 = dynamics::landing_point(f, s1, 1e-6);
        const auto l2 = dynamics::landing_point(f, s2, 1e-6);
        min_gap = std::min(min_gap, std::abs(l1.z - l2.z));
    }
    c.detail << "min non-pinched gap=" << min_gap << "; ";
    c.require(min_gap > 1e-3, "non-pinched pairs land apart > 1e-3");

    // Ray functoriality: the strip itinerary of the image matches the
    // shifted address, entry by entry, for 50 random realizable addresses.
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
        auto s = dynamics::random_realizable_address(rng(), i % 3, 1 + int(i % 3), 2);
        auto cur = s;
        for (int k = 0; k < 10; ++k) {
            const double ts = model::potential_boundary_value(cur);
            const auto p = dynamics::trace_ray(f, cur, ts + 0.7);
            const auto img = evaluate(f, p.z);
            const auto strip = dynamics::strip_of(img);
            if (!(strip.symbol == s.entry(k + 1))) {
                c.require(false, "functoriality at " + model::to_string(s) + " entry " +
                                     std::to_string(k));
                break;
            }
            cur = cur.shifted();
        }
        if (!c.ok) break;
    }
    return finish("rays-and-pinching", c);
}

CriterionResult orbifold_bounds() {
    Check c;

    // Beardon-Pommerenke evaluation at z = -1 against direct arithmetic.
    const double bp = orbifold::density_lower_punctured01({-1.0, 0.0});
    const double direct =
        1.0 / (2.0 * std::sqrt(2.0) * (4.0 + std::log(3.0 + 2.0 * std::sqrt(2.0))));
    c.detail << "BP(-1)=" << bp << "; ";
    c.require(std::abs(bp - direct) < 1e-12, "BP(-1) matches direct arithmetic");
    c.require(std::abs(bp - 0.0613511) < 1e-6, "BP(-1) = 0.0613511 +- 1e-6");

    // Simplification inequalities on 1e4 random samples.
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> box(-30.0, 30.0);
    for (int i = 0; i < 10000; ++i) {
        const complex z(box(rng), box(rng));
        const complex root = std::sqrt(1.0 - std::exp(z));
        const double ratio = std::abs(root) / std::abs(1.0 + root);
        if (!(ratio <= std::numbers::sqrt2 + 1e-12)) {
            c.require(false, "sqrt(2) simplification bound");
            break;
        }
        const double B = std::abs(1.0 - root);
        if (B >= 1.0 &&
            !(std::abs(std::log(B)) <= std::numbers::ln2 + std::abs(z.real()) + 1e-12)) {
            c.require(false, "log2+|Re z| simplification bound");
            break;
        }
    }

    // density_lower_geometric_marks for marks 2*pi*n, K=2: positive with log-log
    // slope -1 +- 0.1 over 50 log-spaced |z| in [10, 1e6].
    const auto seq = orbifold::OrbifoldSpec::plane_arithmetic(2 * pi, 2 * pi);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = 50;
    bool all_positive = true;
    for (int i = 0; i < n; ++i) {
        const double az = 10.0 * std::pow(1e5, double(i) / (n - 1));
        const auto t2 = orbifold::density_lower_geometric_marks(seq, 2.0, {az, 0.0});
        all_positive = all_positive && t2.lower > 0 && t2.windows_ok;
        const double x = std::log(az), y = std::log(t2.lower);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    c.detail << "marked-bound slope=" << slope << "; ";
    c.require(all_positive, "density_lower_geometric_marks positive with valid windows");
    c.require(std::abs(slope + 1.0) < 0.1, "log-log slope -1 +- 0.1");

    // Chain lower bound for rho_0 >= 1/(60+8|Re z|) (displayed-formula
    // convention) on random samples.
    for (int i = 0; i < 10000; ++i) {
        const complex z(box(rng), box(rng));
        const double v = orbifold::density_lower_O0(z, orbifold::ExpConvention::Exp);
        if (!(v >= 1.0 / (60.0 + 8.0 * std::abs(z.real())))) {
            c.require(false, "rho0 chain >= 1/(60+8|Re z|)");
            break;
        }
    }
    return finish("orbifold-bounds", c);
}

CriterionResult expansion() {
    Check c;
    const auto f = dynamics::CosineParams::pi_sinh();
    const auto cert = orbifold::expansion_certificate(f, 8.0, 20.0, 1e4, 25);
    c.detail << "min_bound=" << cert.min_bound << " E_est=" << cert.E_est << "; ";
    bool monotone = true, above_one = true;
    for (size_t i = 0; i < cert.bounds.size(); ++i) {
        above_one = above_one && cert.bounds[i] > 1.0;
        if (i) monotone = monotone && cert.bounds[i] > cert.bounds[i - 1];
    }
    c.require(above_one, "expansion bound > 1 on |z| in [20, 1e4] (real axis)");
    c.require(monotone, "bound grows monotonically along the real axis");
    c.require(cert.E_est >= 1.05, "exported E_est >= 1.05");
    return finish("expansion", c);
}

CriterionResult poincare() {
    Check c;
    const auto s = poincare::solve_coefficients(40);

    const double a2_target = 1.0 / (5.0 + std::sqrt(5.0));
    c.detail << "a2=" << s.coeffs[2] << "; ";
    c.require(std::abs(s.coeffs[2] - a2_target) < 1e-12, "a2 = 1/(5+sqrt5) to 1e-12");

    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> rad(0.0, 0.5), ang(0.0, 2 * pi);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const complex z = std::polar(rad(rng), ang(rng));
        const complex lhs = poincare::evaluate_poincare(s, s.lambda * z, 1);
        const complex phi = poincare::evaluate_poincare(s, z, 0);
        worst = std::max(worst, std::abs(lhs - (phi * phi - 1.0)));
    }
    c.detail << "FE residual=" << worst << "; ";
    c.require(worst < 1e-9, "functional-equation residual < 1e-9");

    const auto cp = poincare::find_critical_preimage(s);
    for (int n = 0; n <= 10; ++n) {
        const int ord = poincare::vanishing_order_at(s, cp, n);
        if (!(ord >= n)) {
            c.require(false, "vanishing order >= n at n=" + std::to_string(n));
            break;
        }
    }

    std::vector<double> radii;
    for (int i = 0; i < 9; ++i) radii.push_back(100.0 * std::pow(10.0, 0.5 * i));
    const auto g = poincare::order_of_growth_estimate(s, radii, 96);
    c.detail << "growth slope=" << g.slope << "; ";
    c.require(g.slope >= 0.54 && g.slope <= 0.64, "growth slope in [0.54, 0.64]");
    c.require(g.slope < std::log(2.0) / std::log(3.0), "growth slope < log2/log3");
    return finish("poincare", c);
}

CriterionResult disconnectedness() {
    Check c;
    const auto g = dynamics::CosineParams::disjoint_sinh(0.5);
    const auto cert = dynamics::certify_disjoint_type(g, 1.0);
    c.detail << "max_modulus=" << cert.max_modulus << " margin=" << cert.margin << "; ";
    c.require(cert.ok, "disjoint-type certificate passes");
    c.require(cert.margin > 0.4, "certificate margin > 0.4");
    // Oracle: the boundary maximum of |0.5 sinh| on |z|=1 sits on the real
    // axis at 0.5*sinh(1).
    const double oracle = 0.5 * std::sinh(1.0);
    c.require(std::abs((cert.max_modulus - cert.padding) - oracle) < 1e-6,
              "boundary max matches 0.5*sinh(1)");

    const auto split = dynamics::fundamental_domain_split(g, 1.0);
    const auto l1 = split.label({5.0, 0.0});
    const auto l2 = split.label({-5.0, 0.0});
    c.require(l1.symbol == model::sym_R(0) && l2.symbol == model::sym_L(0) &&
                  !(l1 == l2),
              "escaping points carry distinct fundamental-domain labels");
    return finish("disconnectedness", c);
}

CriterionResult determinism() {
    Check c;
    render::RenderConfig cfg;
    cfg.params = dynamics::CosineParams::pi_sinh();
    cfg.res_w = 512;
    cfg.res_h = 512;
    cfg.width = 12.0;
    cfg.height = 12.0;
    cfg.maxiter = 80;

    cfg.threads = 1;
    const auto img1 = render::render(cfg).to_ppm();
    cfg.threads = 8;
    const auto img8 = render::render(cfg).to_ppm();
    const auto img8b = render::render(cfg).to_ppm();
    c.detail << "digest=" << report::digest_hex(img1) << "; ";
    c.require(img1 == img8, "bytes identical across 1 vs 8 threads");
    c.require(img8 == img8b, "bytes identical across repeated runs");
    return finish("determinism", c);
}

std::vector<CriterionResult> run_all(std::ostream& out) {
    using Fn = CriterionResult (*)();
    const std::pair<const char*, Fn> steps[] = {
        {"1 model-endpoints", &model_endpoints},
        {"2 semiconjugacy", &semiconjugacy},
        {"3 rays-and-pinching", &rays_and_pinching},
        {"4 orbifold-bounds", &orbifold_bounds},
        {"5 expansion", &expansion},
        {"6 poincare", &poincare},
        {"7 disconnectedness", &disconnectedness},
        {"8 determinism", &determinism},
    };
    std::vector<CriterionResult> results;
    for (const auto& [label, fn] : steps) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r.name = label;
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out << (r.passed ? "PASS " : "FAIL ") << label << "  (" << r.detail << ' '
            << secs << "s)\n";
        out.flush();
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace brush::accept
