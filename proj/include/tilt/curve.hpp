#pragma once

#include <vector>

namespace tilt {

struct Point2 {
  double x = 0, y = 0;
};

using Polyline = std::vector<Point2>;

// Interpolating periodic C2 cubic spline through ctrl (chord-length knots),
// sampled so consecutive output points are at most max_spacing apart.
Polyline periodic_spline(const Polyline& ctrl, double max_spacing);

// Cubic Hermite segment from p0 (tangent t0) to p1 (tangent t1), endpoints
// excluded, sampled at spacing <= max_spacing.
Polyline hermite_segment(Point2 p0, Point2 t0, Point2 p1, Point2 t1, double max_spacing);

// Inserts points on a closed polyline so no gap exceeds max_spacing.
Polyline densify_closed(const Polyline& poly, double max_spacing);

// Even-odd rule.
bool point_in_polygon(const Polyline& poly, Point2 p);

// Symmetric Hausdorff distance between two point sets.
double hausdorff(const Polyline& a, const Polyline& b);

double polyline_length(const Polyline& poly, bool closed);

}  // namespace tilt
