#include "tilt/render.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "tilt/candywrap.hpp"
#include "tilt/error.hpp"

namespace tilt {

namespace {

double keys(double t) {
  t = std::abs(t);
  if (t < 1) return (1.5 * t - 2.5) * t * t + 1;
  if (t < 2) return ((-0.5 * t + 2.5) * t - 4) * t + 2;
  return 0;
}

void draw_segment(RgbImage& img, double x0, double y0, double x1, double y1, const uint8_t rgb[3]) {
  int n = int(std::ceil(std::max(std::abs(x1 - x0), std::abs(y1 - y0)))) + 1;
  for (int k = 0; k <= n; ++k) {
    double t = double(k) / n;
    int c = int(std::lround(x0 + t * (x1 - x0))), r = int(std::lround(y0 + t * (y1 - y0)));
    if (r < 0 || c < 0 || r >= img.rows || c >= img.cols) continue;
    std::copy(rgb, rgb + 3, img.px(r, c));
  }
}

struct PngWriter {
  FILE* f = nullptr;
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriter() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    if (f) std::fclose(f);
  }
};

void write_png_rows(const std::string& path, int rows, int cols, int color_type, const uint8_t* data, int channels) {
  PngWriter w;
  w.f = std::fopen(path.c_str(), "wb");
  require(w.f != nullptr, "cannot open '" + path + "' for writing", ErrorCode::io);
  w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  require(w.png != nullptr, "png_create_write_struct failed", ErrorCode::io);
  w.info = png_create_info_struct(w.png);
  require(w.info != nullptr, "png_create_info_struct failed", ErrorCode::io);
  if (setjmp(png_jmpbuf(w.png))) fail(ErrorCode::io, "libpng failed writing '" + path + "'");
  png_init_io(w.png, w.f);
  png_set_IHDR(w.png, w.info, png_uint_32(cols), png_uint_32(rows), 8, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);
  for (int r = 0; r < rows; ++r)
    png_write_row(w.png, const_cast<png_bytep>(data + size_t(r) * cols * channels));
  png_write_end(w.png, nullptr);
}

}  // namespace

Image bicubic_upsample(const Image& img, int factor) {
  require(factor >= 1, "upsampling factor must be >= 1");
  Image out(img.rows * factor, img.cols * factor, img.pixel_size / factor);
  auto at = [&](int r, int c) {
    return img(std::clamp(r, 0, img.rows - 1), std::clamp(c, 0, img.cols - 1));
  };
  for (int r = 0; r < out.rows; ++r) {
    double y = (r + 0.5) / factor - 0.5;
    int y0 = int(std::floor(y));
    for (int c = 0; c < out.cols; ++c) {
      double x = (c + 0.5) / factor - 0.5;
      int x0 = int(std::floor(x));
      double v = 0;
      for (int i = -1; i <= 2; ++i) {
        double wy = keys(y - (y0 + i));
        for (int j = -1; j <= 2; ++j) v += wy * keys(x - (x0 + j)) * at(y0 + i, x0 + j);
      }
      out(r, c) = v;
    }
  }
  return out;
}

RgbImage render_overlay(const Image& recon, const TiltReport& rep, int factor) {
  Image bg = bicubic_upsample(recon, factor);
  auto [mn, mx] = std::minmax_element(recon.data.begin(), recon.data.end());
  double lo = recon.size() ? *mn : 0, span = recon.size() && *mx > *mn ? *mx - *mn : 1.0;
  RgbImage out(bg.rows, bg.cols);
  for (int r = 0; r < bg.rows; ++r)
    for (int c = 0; c < bg.cols; ++c) {
      auto v = uint8_t(std::lround(std::clamp((bg(r, c) - lo) / span, 0.0, 1.0) * 255));
      uint8_t* p = out.px(r, c);
      p[0] = p[1] = p[2] = v;
    }

  const double cell = rep.scale * factor;
  for (const auto& f : rep.found) {
    const BinaryGrid& g = f.projection;
    for (int r = 0; r < out.rows; ++r) {
      int sr = int((r + 0.5) / cell);
      if (sr >= g.rows()) continue;
      for (int c = 0; c < out.cols; ++c) {
        int sc = int((c + 0.5) / cell);
        if (sc >= g.cols() || !g.get(sr, sc)) continue;
        uint8_t* p = out.px(r, c);
        p[0] = uint8_t(std::lround(0.55 * p[0] + 0.45 * 255));
        p[1] = uint8_t(std::lround(0.55 * p[1]));
        p[2] = uint8_t(std::lround(0.55 * p[2]));
      }
    }
  }

  const uint8_t green[3] = {40, 230, 60};
  auto to_out = [factor](double v) { return (v + 0.5) * factor - 0.5; };
  for (const auto& f : rep.found) {
    const Polyline& pts = f.spline.curve;
    for (size_t i = 0; i < pts.size(); ++i) {
      const Point2& a = pts[i];
      const Point2& b = pts[(i + 1) % pts.size()];
      draw_segment(out, to_out(a.x), to_out(a.y), to_out(b.x), to_out(b.y), green);
    }
  }
  return out;
}

Image render_mask_sheet(const std::vector<double>& distances, int n) {
  const MaskKind kinds[4] = {MaskKind::PlusR, MaskKind::PlusL, MaskKind::MinusR, MaskKind::MinusL};
  const int gap = 2, cols = int(distances.size());
  Image sheet(4 * n + 5 * gap, cols * n + (cols + 1) * gap);
  for (auto& v : sheet.data) v = 0.5;
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < cols; ++j) {
      BinaryGrid g = basic_mask(kinds[k], distances[size_t(j)], n).grid;
      int r0 = gap + k * (n + gap), c0 = gap + j * (n + gap);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) sheet(r0 + r, c0 + c) = g.get(r, c) ? 1.0 : 0.0;
      sheet(r0 + n / 2, c0 + n / 2) = 0.75;
    }
  return sheet;
}

void write_png(const std::string& path, const RgbImage& img) {
  write_png_rows(path, img.rows, img.cols, PNG_COLOR_TYPE_RGB, img.data.data(), 3);
}

void write_png(const std::string& path, const Image& grey, double lo, double hi) {
  double span = hi > lo ? hi - lo : 1.0;
  std::vector<uint8_t> px(grey.size());
  for (size_t i = 0; i < px.size(); ++i)
    px[i] = uint8_t(std::lround(std::clamp((grey.data[i] - lo) / span, 0.0, 1.0) * 255));
  write_png_rows(path, grey.rows, grey.cols, PNG_COLOR_TYPE_GRAY, px.data(), 1);
}

}  // namespace tilt
