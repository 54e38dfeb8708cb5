#include "tilt/candywrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tilt/error.hpp"

namespace tilt {

double cw_distance_canonical(double x, double y, double theta) {
  const double inf = std::numeric_limits<double>::infinity();
  if (x == 0) {
    if (y != 0) return inf;
    return std::remainder(theta, 2 * std::numbers::pi) == 0 ? 0.0 : inf;
  }
  if (!(std::cos(theta) > 0)) return inf;
  if (x < 0) {
    x = -x;
    y = -y;
  }
  const double t = std::tan(theta);
  const double a = (t - 2 * y / x) / (x * x);
  const double b = (-t + 3 * y / x) / x;
  const double energy = 4 * (3 * a * a * x * x * x + 3 * a * b * x * x + b * b * x);
  return energy + std::hypot(x, y);
}

double cw_distance(const PointedDirection& p1, const PointedDirection& p2) {
  const double mx = p1.x - p2.x, my = p1.y - p2.y;
  const double c = std::cos(p2.theta), s = std::sin(p2.theta);
  return cw_distance_canonical(c * mx + s * my, -s * mx + c * my, p1.theta - p2.theta);
}

const char* mask_kind_name(MaskKind k) {
  switch (k) {
    case MaskKind::PlusR: return "+R";
    case MaskKind::PlusL: return "+L";
    case MaskKind::MinusR: return "-R";
    case MaskKind::MinusL: return "-L";
  }
  return "?";
}

CandywrapMask basic_mask(MaskKind kind, double s, int n) {
  require(s > 0, "mask distance must be positive");
  require(n >= 8, "mask size must be >= 8");
  const double theta = (kind == MaskKind::PlusR || kind == MaskKind::PlusL ? 1 : -1) * std::numbers::pi / 6;
  const bool right = kind == MaskKind::PlusR || kind == MaskKind::MinusR;
  const double h = 20.0 / n;
  CandywrapMask m{kind, s, n, BinaryGrid(n, n, n / 2, n / 2)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double x = (j - n / 2) * h, y = (i - n / 2) * h;
      if (right ? !(x > 0) : !(x < 0)) continue;
      if (cw_distance_canonical(x, y, theta) < s) m.grid.set(i, j);
    }
  return m;
}

BinaryGrid rotate_mask(const CandywrapMask& mask, double theta) {
  const BinaryGrid& src = mask.grid;
  int reach = 0;
  for (auto o : src.offsets()) reach = std::max(reach, int(std::ceil(std::hypot(o.dr, o.dc))) + 1);
  const int side = 2 * reach + 1;
  BinaryGrid out(side, side, reach, reach);
  const double c = std::cos(theta), s = std::sin(theta);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      double x = j - reach, y = i - reach;
      int sc = int(std::lround(c * x + s * y)) + src.anchor_col();
      int sr = int(std::lround(-s * x + c * y)) + src.anchor_row();
      if (src.get_or_zero(sr, sc)) out.set(i, j);
    }
  return out;
}

}  // namespace tilt
