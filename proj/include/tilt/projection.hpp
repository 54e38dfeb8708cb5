#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tilt/grid.hpp"

namespace tilt {

// Parallel-beam geometry. View angle θ (degrees) gives the line normal
// (cos θ, sin θ) and the ray direction (−sin θ, cos θ); at θ = 0 rays run
// along +y, i.e. down the image columns.
struct ScanGeometry {
  std::vector<double> angles_deg;
  int detector_count = 0;
  double detector_spacing = 1.0;
  int image_size = 0;
  double pixel_size = 1.0;

  size_t views() const { return angles_deg.size(); }
  // Signed distance of detector k from the rotation centre.
  double detector_offset(int k) const { return (k - 0.5 * (detector_count - 1)) * detector_spacing; }
};

// n equispaced angles from a to b inclusive.
std::vector<double> angle_range(double a, double b, int n);
// Parses "a:b:n".
std::vector<double> parse_angles(const std::string& spec);

// Defaults: detector_count = ceil(sqrt(2)·size), spacing = pixel_size.
ScanGeometry make_geometry(int image_size, std::vector<double> angles_deg, double pixel_size = 1.0);
void validate(const ScanGeometry& g);

struct Sinogram {
  ScanGeometry geometry;
  std::vector<double> data;  // views × detectors, view-major
  std::optional<uint64_t> noise_seed;
  double relative_noise = 0.0;

  double& at(int view, int det) { return data[size_t(view) * geometry.detector_count + det]; }
  double at(int view, int det) const { return data[size_t(view) * geometry.detector_count + det]; }
};

// Visits every pixel crossed by ray (view, det) with its exact intersection
// length, in order along the ray.
void trace_ray(const ScanGeometry& g, int view, int det, const std::function<void(int row, int col, double len)>& visit);

Sinogram forward_project(const Image& image, const ScanGeometry& g);
Image apply_adjoint(const Sinogram& sino, const ScanGeometry& g);
Sinogram add_noise(const Sinogram& sino, double relative_level, uint64_t seed);

}  // namespace tilt
