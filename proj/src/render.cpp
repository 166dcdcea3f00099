#include "brush/render.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "brush/dynamics.hpp"
#include "brush/kernels.hpp"

namespace brush::render {

complex pixel_center(const RenderConfig& cfg, int x, int y) {
    // Integer-antisymmetric offsets: mirrored pixel rows produce exactly
    // negated imaginary parts, so conjugation symmetry holds bitwise.
    const double re = cfg.center.real() +
                      double(2 * x + 1 - cfg.res_w) * (0.5 * cfg.width / cfg.res_w);
    const double im = cfg.center.imag() +
                      double(cfg.res_h - 1 - 2 * y) * (0.5 * cfg.height / cfg.res_h);
    return {re, im};
}

namespace {

// Fixed grayscale palette; escape count 0 (bounded) stays black.
inline uint8_t shade(int32_t count, int maxiter) {
    if (count <= 0) return 0;
    const double t = double(count) / double(maxiter);
    return static_cast<uint8_t>(40.0 + 215.0 * std::sqrt(std::min(1.0, t)));
}

void put_pixel(Image& img, int x, int y, uint8_t r, uint8_t g, uint8_t b) {
    if (x < 0 || y < 0 || x >= img.w || y >= img.h) return;
    const size_t idx = 3 * (size_t(y) * img.w + x);
    img.rgb[idx] = r;
    img.rgb[idx + 1] = g;
    img.rgb[idx + 2] = b;
}

}  // namespace

Image render(const RenderConfig& cfg) {
    if (cfg.res_w <= 0 || cfg.res_h <= 0 || cfg.res_w > 16384 || cfg.res_h > 16384)
        throw std::invalid_argument("resolution out of range");
    const auto [v1, v2] = singular_values(cfg.params);
    if (!(cfg.escape_radius > std::max(std::abs(v1), std::abs(v2)) + 1))
        throw std::invalid_argument("escape radius must exceed |v1|+1");

    Image img;
    img.w = cfg.res_w;
    img.h = cfg.res_h;
    img.rgb.assign(size_t(3) * cfg.res_w * cfg.res_h, 0);

    simd::EscapeParams kp;
    kp.a_re = cfg.params.a.real();
    kp.a_im = cfg.params.a.imag();
    kp.b_re = cfg.params.b.real();
    kp.b_im = cfg.params.b.imag();
    kp.R2 = cfg.escape_radius * cfg.escape_radius;
    kp.maxiter = cfg.maxiter;
    const auto kernel = simd::dispatched_escape_kernel();

    // Row-parallel with deterministic row-ordered assembly: each row's bytes
    // depend only on its own pixels.
    const int nthreads = std::max(1, cfg.threads);
    auto worker = [&](int y0, int stride) {
        std::vector<double> re(cfg.res_w), im(cfg.res_w);
        std::vector<int32_t> counts(cfg.res_w);
        for (int y = y0; y < cfg.res_h; y += stride) {
            for (int x = 0; x < cfg.res_w; ++x) {
                const complex z = pixel_center(cfg, x, y);
                re[x] = z.real();
                im[x] = z.imag();
            }
            kernel(re.data(), im.data(), cfg.res_w, kp, counts.data());
            for (int x = 0; x < cfg.res_w; ++x) {
                const uint8_t g = shade(counts[x], cfg.maxiter);
                const size_t idx = 3 * (size_t(y) * cfg.res_w + x);
                img.rgb[idx] = g;
                img.rgb[idx + 1] = g;
                img.rgb[idx + 2] = g;
            }
        }
    };
    if (nthreads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t, nthreads);
        for (auto& th : pool) th.join();
    }

    // Singular-value markers: small fixed-color crosses.
    auto to_px = [&](complex z, int& x, int& y) {
        x = int(std::floor((z.real() - cfg.center.real()) / cfg.width * cfg.res_w +
                           cfg.res_w / 2.0));
        y = int(std::floor((cfg.center.imag() - z.imag()) / cfg.height * cfg.res_h +
                           cfg.res_h / 2.0));
    };
    for (const complex m : {v1, v2, complex(0, 0)}) {
        int x, y;
        to_px(m, x, y);
        for (int d = -2; d <= 2; ++d) {
            put_pixel(img, x + d, y, 255, 200, 0);
            put_pixel(img, x, y + d, 255, 200, 0);
        }
    }

    // Ray overlays traced at a fixed potential grid.
    for (const auto& addr : cfg.overlays) {
        try {
            const double ts = model::potential_boundary_value(addr);
            for (int k = 0; k <= 160; ++k) {
                const double t = ts + 1e-3 + k * 0.05;
                const auto p = dynamics::trace_ray(cfg.params, addr, t);
                int x, y;
                to_px(p.z, x, y);
                put_pixel(img, x, y, 220, 40, 40);
            }
        } catch (const dynamics::RayError&) {
            // Overlay outside the window or unconverged tail: skip quietly.
        } catch (const dynamics::BranchError&) {
        }
    }
    return img;
}

std::string Image::to_ppm() const {
    std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
    return out;
}

}  // namespace brush::render
