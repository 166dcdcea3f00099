#pragma once

#include <string>
#include <vector>

#include "brush/cosine.hpp"
#include "brush/model.hpp"

namespace brush::render {

using dynamics::complex;
using dynamics::CosineParams;

struct RenderConfig {
    CosineParams params = CosineParams::pi_sinh();
    complex center{0, 0};
    double width = 12.0;
    double height = 12.0;
    int res_w = 512;
    int res_h = 512;
    double escape_radius = 50.0;
    int maxiter = 100;
    std::vector<model::ExternalAddress> overlays;
    int threads = 1;
};

// Escape-time grayscale image with ray overlays and singular-value markers,
// serialized as binary PPM (P6, 8-bit, row-major top-to-bottom). Output
// bytes are identical across runs and thread counts: rows are computed
// independently and assembled in order, and all pixels go through the same
// dispatched kernel.
struct Image {
    int w = 0, h = 0;
    std::vector<uint8_t> rgb;  // 3 bytes per pixel

    std::string to_ppm() const;
};

Image render(const RenderConfig& cfg);

// Pixel-center coordinate mapping (exposed for tests).
complex pixel_center(const RenderConfig& cfg, int x, int y);

}  // namespace brush::render
