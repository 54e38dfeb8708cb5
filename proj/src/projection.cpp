#include "tilt/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "tilt/error.hpp"
#include "tilt/parallel.hpp"

namespace tilt {

namespace {

constexpr int kAdjointBlock = 8;  // views per adjoint accumulation buffer

// Incremental exact traversal in pixel units. Lengths are scaled by the
// pixel size before being reported.
template <typename Visit>
void traverse_shifted(const ScanGeometry& g, int view, int det, double shift, double weight, Visit&& visit) {
  const double th = g.angles_deg[size_t(view)] * std::numbers::pi / 180.0;
  const double nx = std::cos(th), ny = std::sin(th);
  const double dx = -ny, dy = nx;
  const double n = g.image_size;
  const double ps = g.pixel_size;
  const double p = g.detector_offset(det) / ps + shift;

  // Ray origin in pixel coordinates (column u, row v).
  const double u0 = p * nx + 0.5 * n, v0 = p * ny + 0.5 * n;

  double tmin = -std::numeric_limits<double>::infinity();
  double tmax = std::numeric_limits<double>::infinity();
  auto clip = [&](double o, double d) {
    if (std::abs(d) < 1e-12) return o >= 0 && o < n;
    double a = (0 - o) / d, b = (n - o) / d;
    if (a > b) std::swap(a, b);
    tmin = std::max(tmin, a);
    tmax = std::min(tmax, b);
    return true;
  };
  if (!clip(u0, dx) || !clip(v0, dy) || !(tmax > tmin)) return;

  const bool mx = std::abs(dx) >= 1e-12, my = std::abs(dy) >= 1e-12;
  const int sx = dx > 0 ? 1 : -1, sy = dy > 0 ? 1 : -1;
  const double inf = std::numeric_limits<double>::infinity();
  double ue = u0 + tmin * dx, ve = v0 + tmin * dy;
  double kx = sx > 0 ? std::floor(ue) + 1 : std::ceil(ue) - 1;
  double ky = sy > 0 ? std::floor(ve) + 1 : std::ceil(ve) - 1;
  double tx = mx ? (kx - u0) / dx : inf;
  double ty = my ? (ky - v0) / dy : inf;

  const int last = g.image_size - 1;
  double t = tmin;
  while (t < tmax) {
    double tn = std::min({tx, ty, tmax});
    if (tn > t + 1e-12) {
      double mid = 0.5 * (t + tn);
      int c = std::clamp(int(std::floor(u0 + mid * dx)), 0, last);
      int r = std::clamp(int(std::floor(v0 + mid * dy)), 0, last);
      visit(r, c, (tn - t) * ps * weight);
    }
    if (tx <= tn) {
      kx += sx;
      tx = (kx - u0) / dx;
    }
    if (ty <= tn) {
      ky += sy;
      ty = (ky - v0) / dy;
    }
    t = tn;
  }
}

// A ray running along a pixel edge is split evenly between the pixels on
// either side.
template <typename Visit>
void traverse(const ScanGeometry& g, int view, int det, Visit&& visit) {
  const double th = g.angles_deg[size_t(view)] * std::numbers::pi / 180.0;
  const double nx = std::cos(th), ny = std::sin(th);
  const double n = g.image_size;
  const double p = g.detector_offset(det) / g.pixel_size;
  auto on_edge = [](double o) { return std::abs(o - std::round(o)) < 1e-9; };
  const bool edge = (std::abs(ny) < 1e-12 && on_edge(p * nx + 0.5 * n)) || (std::abs(nx) < 1e-12 && on_edge(p * ny + 0.5 * n));
  if (!edge) return traverse_shifted(g, view, det, 0.0, 1.0, visit);
  traverse_shifted(g, view, det, -1e-6, 0.5, visit);
  traverse_shifted(g, view, det, 1e-6, 0.5, visit);
}

void check_image(const Image& image, const ScanGeometry& g) {
  require(image.rows == g.image_size && image.cols == g.image_size, "image size does not match geometry",
          ErrorCode::size_mismatch);
}

}  // namespace

std::vector<double> angle_range(double a, double b, int n) {
  require(n >= 1, "angle count must be >= 1");
  std::vector<double> out(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) out[size_t(k)] = n == 1 ? a : a + (b - a) * k / (n - 1);
  return out;
}

std::vector<double> parse_angles(const std::string& spec) {
  std::stringstream ss(spec);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  require(parts.size() == 3, "angles must be given as a:b:n, got '" + spec + "'", ErrorCode::config);
  try {
    size_t used = 0;
    double a = std::stod(parts[0]), b = std::stod(parts[1]);
    int n = std::stoi(parts[2], &used);
    require(used == parts[2].size() && n >= 1, "angle count must be a positive integer", ErrorCode::config);
    return angle_range(a, b, n);
  } catch (const std::logic_error&) {
    fail(ErrorCode::config, "cannot parse angles '" + spec + "'");
  }
}

ScanGeometry make_geometry(int image_size, std::vector<double> angles_deg, double pixel_size) {
  ScanGeometry g;
  g.angles_deg = std::move(angles_deg);
  g.image_size = image_size;
  g.pixel_size = pixel_size;
  g.detector_spacing = pixel_size;
  g.detector_count = int(std::ceil(std::sqrt(2.0) * image_size));
  validate(g);
  return g;
}

void validate(const ScanGeometry& g) {
  require(g.image_size >= 1 && g.pixel_size > 0, "image size and pixel size must be positive");
  require(!g.angles_deg.empty(), "geometry needs at least one view");
  for (size_t k = 1; k < g.angles_deg.size(); ++k)
    require(g.angles_deg[k] > g.angles_deg[k - 1], "view angles must be strictly increasing");
  require(g.angles_deg.back() - g.angles_deg.front() < 180.0, "view angles must span less than 180 degrees");
  require(g.detector_spacing > 0 && g.detector_count >= 1, "detector spacing and count must be positive");
  double diagonal = std::sqrt(2.0) * g.image_size * g.pixel_size;
  require(g.detector_count * g.detector_spacing >= diagonal * (1 - 1e-12), "detector row does not cover the image diagonal");
}

void trace_ray(const ScanGeometry& g, int view, int det, const std::function<void(int, int, double)>& visit) {
  traverse(g, view, det, visit);
}

Sinogram forward_project(const Image& image, const ScanGeometry& g) {
  check_image(image, g);
  Sinogram s;
  s.geometry = g;
  s.data.assign(g.views() * size_t(g.detector_count), 0.0);
  const int n = g.image_size;
  parallel_for(int(g.views()), [&](int v) {
    for (int k = 0; k < g.detector_count; ++k) {
      double acc = 0;
      traverse(g, v, k, [&](int r, int c, double len) { acc += len * image.data[size_t(r) * n + c]; });
      s.at(v, k) = acc;
    }
  });
  return s;
}

Image apply_adjoint(const Sinogram& sino, const ScanGeometry& g) {
  require(sino.data.size() == g.views() * size_t(g.detector_count), "sinogram does not match geometry",
          ErrorCode::size_mismatch);
  const int n = g.image_size;
  const int blocks = int((g.views() + kAdjointBlock - 1) / kAdjointBlock);
  std::vector<std::vector<double>> buf(static_cast<size_t>(blocks));
  parallel_for(blocks, [&](int b) {
    auto& acc = buf[size_t(b)];
    acc.assign(size_t(n) * n, 0.0);
    int v1 = std::min<int>(int(g.views()), (b + 1) * kAdjointBlock);
    for (int v = b * kAdjointBlock; v < v1; ++v)
      for (int k = 0; k < g.detector_count; ++k) {
        double m = sino.at(v, k);
        if (m == 0) continue;
        traverse(g, v, k, [&](int r, int c, double len) { acc[size_t(r) * n + c] += len * m; });
      }
  });
  Image out(n, n, g.pixel_size);
  for (const auto& acc : buf)
    for (size_t i = 0; i < acc.size(); ++i) out.data[i] += acc[i];
  return out;
}

Sinogram add_noise(const Sinogram& sino, double relative_level, uint64_t seed) {
  require(relative_level >= 0, "relative noise level must be non-negative");
  Sinogram out = sino;
  out.noise_seed = seed;
  out.relative_noise = relative_level;
  if (relative_level == 0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> eps(sino.data.size());
  double en = 0, mn = 0;
  for (size_t i = 0; i < eps.size(); ++i) {
    eps[i] = normal(rng);
    en += eps[i] * eps[i];
    mn += sino.data[i] * sino.data[i];
  }
  if (en == 0 || mn == 0) return out;
  double scale = relative_level * std::sqrt(mn) / std::sqrt(en);
  for (size_t i = 0; i < eps.size(); ++i) out.data[i] += scale * eps[i];
  return out;
}

}  // namespace tilt
