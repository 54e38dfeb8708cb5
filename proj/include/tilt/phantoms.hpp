#pragma once

#include <string>
#include <vector>

#include "tilt/curve.hpp"
#include "tilt/grid.hpp"

namespace tilt {

enum class PhantomKind { annulus, ellipse_group, blob, high_curvature, custom_curve };

const char* phantom_kind_name(PhantomKind k);

// Ellipse in unit-square coordinates; angle in radians, measured from +x
// towards +y (downwards).
struct EllipseParams {
  double cx = 0.5, cy = 0.5;
  double a = 0.1, b = 0.1;
  double angle = 0.0;
};

// Shape parameters live in [0,1]^2 with x along columns and y along rows.
struct PhantomSpec {
  PhantomKind kind = PhantomKind::annulus;
  int size = 256;
  // annulus
  double cx = 0.5, cy = 0.5;
  double r_out = 0.3, r_in = 0.15;
  // ellipse-group
  std::vector<EllipseParams> ellipses;
  // blob, high-curvature, custom-curve: closed control polygon interpolated
  // by a periodic cubic spline.
  Polyline control_points;
};

void validate(const PhantomSpec& spec);

// Dense boundary polyline of a curve-type phantom, unit-square coordinates.
Polyline phantom_curve(const PhantomSpec& spec);

Image make_phantom(const PhantomSpec& spec);

// Registry: annulus, ellipses, blob, highcurv. Throws ErrorCode::config for
// unknown names.
PhantomSpec fixture(const std::string& name, int size);
std::vector<std::string> fixture_names();

}  // namespace tilt
