// brush: escape-time rendering, brush-model exports, dynamic-ray tracing and
// the verification suites for the pi*sinh family, from the command line.

#include <chrono>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"

#include "brush/acceptance.hpp"
#include "brush/conjugacy.hpp"
#include "brush/dynamics.hpp"
#include "brush/orbifold.hpp"
#include "brush/pinching.hpp"
#include "brush/poincare.hpp"
#include "brush/render.hpp"
#include "brush/report.hpp"

namespace {

using brush::report::CriterionResult;
using brush::report::RunReport;
using complex = std::complex<double>;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

int finalize(RunReport& rep, const Timer& timer, const std::string& report_path) {
    rep.wall_seconds = timer.seconds();
    const std::string json = rep.to_json();
    if (report_path.empty())
        std::cout << json << '\n';
    else
        brush::report::write_file(report_path, json);
    return rep.all_passed() ? 0 : 1;
}

void add_check(RunReport& rep, const std::string& name, bool ok,
               const std::string& detail = "") {
    rep.criteria.push_back({name, ok, detail});
}

int cmd_render(const std::string& out, const std::string& report_path, complex center,
               double width, double height, int rw, int rh, double radius, int maxiter,
               int threads, const std::vector<std::string>& overlays) {
    Timer timer;
    brush::render::RenderConfig cfg;
    cfg.center = center;
    cfg.width = width;
    cfg.height = height;
    cfg.res_w = rw;
    cfg.res_h = rh;
    cfg.escape_radius = radius;
    cfg.maxiter = maxiter;
    cfg.threads = threads;
    for (const auto& o : overlays) cfg.overlays.push_back(brush::model::parse_address(o));

    RunReport rep;
    rep.command = "render";
    rep.inputs_digest = brush::report::digest_hex(
        out + std::to_string(width) + std::to_string(rw) + std::to_string(maxiter));
    const auto ppm = brush::render::render(cfg).to_ppm();
    brush::report::write_file(out, ppm);
    rep.outputs_digest = brush::report::digest_hex(ppm);
    add_check(rep, "render-written", true, out);
    return finalize(rep, timer, report_path);
}

int cmd_model(int samples, uint64_t seed, const std::string& out,
              const std::string& report_path) {
    Timer timer;
    RunReport rep;
    rep.command = "model";

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> idx(-3, 3), plen(1, 4), coin(0, 1);
    std::uniform_real_distribution<double> dt(-0.5, 2.0);
    std::vector<brush::model::BrushSample> rows;
    bool tri_ok = true;
    for (int i = 0; i < samples; ++i) {
        std::vector<brush::model::Symbol> w(plen(rng));
        for (auto& s : w)
            s = {idx(rng), coin(rng) ? brush::model::Symbol::Side::R
                                     : brush::model::Symbol::Side::L};
        bool nz = false;
        for (auto& s : w) nz |= s.index != 0;
        if (!nz) w[0].index = 1;
        brush::model::ExternalAddress addr({}, w);
        const double ts = brush::model::potential_boundary_value(addr);
        const double t = std::max(0.0, ts + dt(rng));
        const auto verdict = brush::model::brush_membership({addr, t}, 2000);
        rows.push_back({addr, t, verdict.verdict});
        if (t > ts + 1e-3 && verdict.verdict == brush::model::BrushVerdict::NotInXbar)
            tri_ok = false;
        if (ts > 1e-3 && t < ts - 1e-3 &&
            verdict.verdict != brush::model::BrushVerdict::NotInXbar)
            tri_ok = false;
    }
    const auto csv = brush::model::brush_samples_csv(rows);
    brush::report::write_file(out, csv);
    rep.outputs_digest = brush::report::digest_hex(csv);
    add_check(rep, "samples-written", true, std::to_string(rows.size()) + " rows");
    add_check(rep, "membership-consistent-with-t_s", tri_ok);
    return finalize(rep, timer, report_path);
}

int cmd_ray(const std::string& address, double t0, double t1, int steps,
            const std::string& out, const std::string& report_path) {
    Timer timer;
    RunReport rep;
    rep.command = "ray";
    const auto addr = brush::model::parse_address(address);
    const auto f = brush::dynamics::CosineParams::pi_sinh();

    std::vector<double> ts;
    if (steps <= 1 || t1 <= t0) {
        ts.push_back(t0);
    } else {
        for (int i = 0; i < steps; ++i) ts.push_back(t0 + (t1 - t0) * i / (steps - 1));
    }
    const auto ray = brush::dynamics::trace_ray_grid(f, addr, ts);
    const auto csv = brush::dynamics::ray_csv(ray);
    brush::report::write_file(out, csv);
    rep.outputs_digest = brush::report::digest_hex(csv);

    double worst = 0.0;
    for (const auto& p : ray.samples) worst = std::max(worst, p.residual);
    add_check(rep, "residual-tail-below-1e-9", worst < 1e-9,
              "max residual " + std::to_string(worst));
    return finalize(rep, timer, report_path);
}

int cmd_conjugacy(int samples, int jmax, uint64_t seed, const std::string& out,
                  const std::string& gcert_path, const std::string& report_path) {
    Timer timer;
    RunReport rep;
    rep.command = "conjugacy";
    const auto cfg = brush::conjugacy::build_config(brush::dynamics::CosineParams::pi_sinh());
    const auto ss = brush::conjugacy::make_samples(cfg, samples, seed);
    const auto report = brush::conjugacy::convergence_report(cfg, ss, jmax);
    const auto json = brush::conjugacy::convergence_report_json(report);
    brush::report::write_file(out, json);
    rep.outputs_digest = brush::report::digest_hex(json);

    if (!gcert_path.empty()) {
        const auto& c = cfg.g_certificate;
        nlohmann::json jc;
        jc["params"] = {{"a", {cfg.mu * cfg.f.a.real(), cfg.mu * cfg.f.a.imag()}},
                        {"mu", cfg.mu}};
        jc["radius"] = c.radius;
        jc["max_modulus"] = c.max_modulus;
        jc["margin"] = c.margin;
        jc["verdict"] = c.ok;
        brush::report::write_file(gcert_path, jc.dump(2));
    }

    add_check(rep, "commutation-below-1e-8", report.max_commutation < 1e-8,
              std::to_string(report.max_commutation));
    add_check(rep, "fitted-ratio-below-0.9", report.fitted_ratio < 0.9,
              std::to_string(report.fitted_ratio));
    add_check(rep, "budget-finite-positive",
              report.budget > 0 && std::isfinite(report.budget));
    return finalize(rep, timer, report_path);
}

int cmd_orbifold(const std::string& out, const std::string& cert_path,
                 const std::string& report_path) {
    Timer timer;
    RunReport rep;
    rep.command = "orbifold";
    const auto f = brush::dynamics::CosineParams::pi_sinh();

    // Lower bounds for the 2*pi*n marked orbifold (no certified upper
    // there), plus exact disk-complement rows where lower = upper.
    std::vector<brush::orbifold::BoundRow> rows;
    const auto seq = brush::orbifold::OrbifoldSpec::plane_arithmetic(
        2 * std::numbers::pi, 2 * std::numbers::pi);
    bool positive = true, monotone = true;
    double prev_exact = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 40; ++i) {
        const double az = 12.0 * std::pow(1e4, i / 39.0);
        const complex z{az, 0.0};
        brush::orbifold::BoundRow marked;
        marked.z = z;
        marked.lower = brush::orbifold::density_lower_geometric_marks(seq, 2.0, z).lower;
        marked.chain_id = "geometric-marks[2pin, K=2]";
        positive = positive && marked.lower > 0;
        rows.push_back(marked);

        brush::orbifold::BoundRow disk;
        disk.z = z;
        disk.lower = disk.upper = brush::orbifold::density_upper_disk_complement(4.0, z);
        disk.chain_id = "disk-complement[r=4] exact";
        monotone = monotone && disk.upper < prev_exact;
        prev_exact = disk.upper;
        rows.push_back(disk);
    }
    const auto csv = brush::orbifold::bound_table_csv(rows);
    brush::report::write_file(out, csv);

    const auto cert = brush::orbifold::expansion_certificate(f, 8.0);
    nlohmann::json jc;
    jc["params"] = {{"a", {f.a.real(), f.a.imag()}}, {"b", {f.b.real(), f.b.imag()}}};
    jc["K_disk"] = cert.K_disk;
    jc["grid"] = cert.grid;
    jc["bounds"] = cert.bounds;
    jc["min_bound"] = cert.min_bound;
    jc["E_est"] = cert.E_est;
    const auto cert_json = jc.dump(2);
    if (!cert_path.empty()) brush::report::write_file(cert_path, cert_json);
    rep.outputs_digest = brush::report::digest_hex(csv + cert_json);

    add_check(rep, "marked-lower-positive", positive);
    add_check(rep, "disk-density-monotone", monotone);
    add_check(rep, "expansion-min-above-1", cert.min_bound > 1.0,
              std::to_string(cert.min_bound));
    add_check(rep, "E_est-at-least-1.05", cert.E_est >= 1.05);
    return finalize(rep, timer, report_path);
}

int cmd_poincare(int orders, int N, const std::string& out,
                 const std::string& report_path) {
    Timer timer;
    RunReport rep;
    rep.command = "poincare";
    const auto s = brush::poincare::solve_coefficients(N);
    const auto cp = brush::poincare::find_critical_preimage(s);

    nlohmann::json j;
    j["z0"] = s.z0;
    j["lambda"] = s.lambda;
    j["N"] = s.order();
    j["coeffs"] = s.coeffs;
    j["z_tilde"] = {cp.z_tilde.real(), cp.z_tilde.imag()};
    auto& ord = j["orders"] = nlohmann::json::array();
    bool ord_ok = true;
    for (int n = 0; n <= orders; ++n) {
        const int o = brush::poincare::vanishing_order_at(s, cp, n);
        ord.push_back({n, o});
        ord_ok = ord_ok && o >= n;
    }
    std::vector<double> radii;
    for (int i = 0; i < 9; ++i) radii.push_back(100.0 * std::pow(10.0, 0.5 * i));
    const auto g = brush::poincare::order_of_growth_estimate(s, radii);
    j["growth_slope"] = g.slope;
    const auto json = j.dump(2);
    brush::report::write_file(out, json);
    rep.outputs_digest = brush::report::digest_hex(json);

    add_check(rep, "orders-at-least-n", ord_ok);
    add_check(rep, "recursion-residual-below-1e-12",
              brush::poincare::recursion_residual(s) < 1e-12);
    add_check(rep, "growth-slope-in-band", g.slope >= 0.54 && g.slope <= 0.64,
              std::to_string(g.slope));
    return finalize(rep, timer, report_path);
}

int cmd_verify(const std::string& suite, const std::string& report_path) {
    Timer timer;
    RunReport rep;
    rep.command = "verify --suite " + suite;
    if (suite != "acceptance") {
        std::cerr << "unknown suite: " << suite << " (expected 'acceptance')\n";
        return 2;
    }
    const auto results = brush::accept::run_all(std::cout);
    for (const auto& r : results) rep.criteria.push_back(r);
    rep.wall_seconds = timer.seconds();
    if (!report_path.empty()) brush::report::write_file(report_path, rep.to_json());
    return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale dynamics of the cosine/sinh family"};
    app.set_config("--config", "", "flat key=value configuration file");
    app.require_subcommand(1);

    // render
    auto* render_cmd = app.add_subcommand("render", "escape-time PPM image");
    std::string out = "render.ppm", report_path;
    double cre = 0, cim = 0, width = 12, height = 12, radius = 50;
    int rw = 512, rh = 512, maxiter = 100, threads = 1;
    std::vector<std::string> overlays;
    render_cmd->add_option("--out", out);
    render_cmd->add_option("--report", report_path);
    render_cmd->add_option("--center-re", cre);
    render_cmd->add_option("--center-im", cim);
    render_cmd->add_option("--width", width);
    render_cmd->add_option("--height", height);
    render_cmd->add_option("--res-w", rw);
    render_cmd->add_option("--res-h", rh);
    render_cmd->add_option("--radius", radius);
    render_cmd->add_option("--maxiter", maxiter);
    render_cmd->add_option("--threads", threads);
    render_cmd->add_option("--overlay", overlays, "ray address overlay (repeatable)");

    // model
    auto* model_cmd = app.add_subcommand("model", "brush sample CSV export");
    int model_samples = 200;
    uint64_t model_seed = 1;
    std::string model_out = "brush.csv", model_report;
    model_cmd->add_option("--samples", model_samples);
    model_cmd->add_option("--seed", model_seed);
    model_cmd->add_option("--out", model_out);
    model_cmd->add_option("--report", model_report);

    // ray
    auto* ray_cmd = app.add_subcommand("ray", "trace a dynamic ray to CSV");
    std::string ray_address = "|0R", ray_out = "ray.csv", ray_report;
    double ray_t = 3.0, ray_t1 = 0.0;
    int ray_steps = 1;
    ray_cmd->add_option("--address", ray_address)->required();
    ray_cmd->add_option("--t", ray_t);
    ray_cmd->add_option("--tmax", ray_t1);
    ray_cmd->add_option("--steps", ray_steps);
    ray_cmd->add_option("--out", ray_out);
    ray_cmd->add_option("--report", ray_report);

    // conjugacy
    auto* conj_cmd = app.add_subcommand("conjugacy", "semiconjugacy convergence report");
    int conj_samples = 50, conj_jmax = 12;
    uint64_t conj_seed = 20240;
    std::string conj_out = "conjugacy.json", conj_gcert, conj_report;
    conj_cmd->add_option("--samples", conj_samples);
    conj_cmd->add_option("--jmax", conj_jmax);
    conj_cmd->add_option("--seed", conj_seed);
    conj_cmd->add_option("--out", conj_out);
    conj_cmd->add_option("--gcert", conj_gcert, "disjoint-type certificate JSON for g");
    conj_cmd->add_option("--report", conj_report);

    // orbifold
    auto* orb_cmd = app.add_subcommand("orbifold", "bound tables and expansion certificate");
    std::string orb_out = "bounds.csv", orb_cert = "expansion.json", orb_report;
    orb_cmd->add_option("--out", orb_out);
    orb_cmd->add_option("--cert", orb_cert);
    orb_cmd->add_option("--report", orb_report);

    // poincare
    auto* poin_cmd = app.add_subcommand("poincare", "coefficients, orders, growth");
    int poin_orders = 10, poin_N = 40;
    std::string poin_out = "poincare.json", poin_report;
    poin_cmd->add_option("--orders", poin_orders);
    poin_cmd->add_option("--n", poin_N);
    poin_cmd->add_option("--out", poin_out);
    poin_cmd->add_option("--report", poin_report);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "acceptance", verify_report;
    verify_cmd->add_option("--suite", suite);
    verify_cmd->add_option("--report", verify_report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (render_cmd->parsed())
            return cmd_render(out, report_path, {cre, cim}, width, height, rw, rh, radius,
                              maxiter, threads, overlays);
        if (model_cmd->parsed()) return cmd_model(model_samples, model_seed, model_out, model_report);
        if (ray_cmd->parsed())
            return cmd_ray(ray_address, ray_t, ray_t1, ray_steps, ray_out, ray_report);
        if (conj_cmd->parsed())
            return cmd_conjugacy(conj_samples, conj_jmax, conj_seed, conj_out, conj_gcert,
                                 conj_report);
        if (orb_cmd->parsed()) return cmd_orbifold(orb_out, orb_cert, orb_report);
        if (poin_cmd->parsed()) return cmd_poincare(poin_orders, poin_N, poin_out, poin_report);
        if (verify_cmd->parsed()) return cmd_verify(suite, verify_report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
