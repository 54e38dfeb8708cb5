#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tilt/grid.hpp"
#include "tilt/pipeline.hpp"

namespace tilt {

struct RgbImage {
  int rows = 0, cols = 0;
  std::vector<uint8_t> data;  // r, g, b interleaved

  RgbImage() = default;
  RgbImage(int r, int c) : rows(r), cols(c), data(size_t(r) * c * 3, 0) {}
  uint8_t* px(int r, int c) { return data.data() + (size_t(r) * cols + c) * 3; }
};

// Keys cubic convolution (a = -0.5), clamped borders. Output pixel centres
// map to (i + 0.5) / factor - 0.5 in the input.
Image bicubic_upsample(const Image& img, int factor);

// Greyscale background from img mapped over its own range, then component
// projections blended in red and spline curves drawn in green. Projections
// live on the subband grid and are scaled by rep.scale · factor.
RgbImage render_overlay(const Image& recon, const TiltReport& rep, int factor);

// Rows: +R, +L, −R, −L basic masks; columns: the listed distances. Cells are
// separated by a grey frame.
Image render_mask_sheet(const std::vector<double>& distances, int n);

void write_png(const std::string& path, const RgbImage& img);
void write_png(const std::string& path, const Image& grey, double lo, double hi);

}  // namespace tilt
