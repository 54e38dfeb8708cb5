#pragma once

#include "tilt/grid.hpp"

namespace tilt {

struct PointedDirection {
  double x = 0, y = 0;
  double theta = 0;  // tangent angle, radians
};

// Cubic-interpolant bending energy plus Euclidean length for a curve leaving
// the origin along +x and arriving at (x, y) with tangent angle theta:
//   4(3a²x³ + 3abx² + b²x) + sqrt(x² + y²),
//   a = (tan θ − 2y/x)/x², b = (−tan θ + 3y/x)/x,   for x > 0, cos θ > 0.
// x < 0 evaluates (−x, −y, θ). +infinity when cos θ <= 0, or x = 0 away from
// the origin; 0 at (0, 0, 0).
double cw_distance_canonical(double x, double y, double theta);

// Moves p2 to the origin with tangent 0 and evaluates the canonical form at
// the transformed p1.
double cw_distance(const PointedDirection& p1, const PointedDirection& p2);

// +R: θ = +π/6, x > 0;  +L: θ = +π/6, x < 0;  −R: θ = −π/6, x > 0;  −L: θ = −π/6, x < 0.
enum class MaskKind { PlusR, PlusL, MinusR, MinusL };
const char* mask_kind_name(MaskKind k);

// N×N cells over [−10, 10)², cell (i, j) centred at ((j − N/2)·h, (i − N/2)·h)
// with h = 20/N; the anchor is cell (N/2, N/2), centred on the origin.
struct CandywrapMask {
  MaskKind kind = MaskKind::PlusR;
  double s = 0;
  int n = 0;
  BinaryGrid grid;
};

CandywrapMask basic_mask(MaskKind kind, double s, int n);

// Rotation by theta about the anchor (direction angle φ goes to φ + θ),
// nearest-cell inverse mapping into a square grid large enough to hold the
// rotated support. The anchor stays at the centre.
BinaryGrid rotate_mask(const CandywrapMask& mask, double theta);

}  // namespace tilt
