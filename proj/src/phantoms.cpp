#include "tilt/phantoms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tilt/error.hpp"

namespace tilt {

namespace {

constexpr double kLo = 0.05, kHi = 0.95;
constexpr double kPi = std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

bool inside_margin(double x, double y) { return x > kLo && x < kHi && y > kLo && y < kHi; }

// Value of the implicit form; < 1 inside.
double ellipse_form(const EllipseParams& e, double x, double y) {
  double c = std::cos(e.angle), s = std::sin(e.angle);
  double dx = x - e.cx, dy = y - e.cy;
  double u = c * dx + s * dy, v = -s * dx + c * dy;
  return (u * u) / (e.a * e.a) + (v * v) / (e.b * e.b);
}

Point2 ellipse_point(const EllipseParams& e, double t) {
  double c = std::cos(e.angle), s = std::sin(e.angle);
  double u = e.a * std::cos(t), v = e.b * std::sin(t);
  return {e.cx + c * u - s * v, e.cy + s * u + c * v};
}

bool ellipses_overlap(const EllipseParams& p, const EllipseParams& q) {
  // Convex sets intersect iff a boundary point of one lies in the other, or
  // one contains the other (then its centre test catches it).
  if (ellipse_form(q, p.cx, p.cy) <= 1 || ellipse_form(p, q.cx, q.cy) <= 1) return true;
  const int n = 2048;
  for (int k = 0; k < n; ++k) {
    double t = 2 * kPi * k / n;
    auto a = ellipse_point(p, t);
    auto b = ellipse_point(q, t);
    if (ellipse_form(q, a.x, a.y) <= 1 || ellipse_form(p, b.x, b.y) <= 1) return true;
  }
  return false;
}

Polyline polar_curve(double cx, double cy, int n, auto radius) {
  Polyline pts;
  for (int k = 0; k < n; ++k) {
    double phi = 2 * kPi * k / n;
    double r = radius(phi);
    pts.push_back({cx + r * std::cos(phi), cy + r * std::sin(phi)});
  }
  return pts;
}

}  // namespace

const char* phantom_kind_name(PhantomKind k) {
  switch (k) {
    case PhantomKind::annulus: return "annulus";
    case PhantomKind::ellipse_group: return "ellipse-group";
    case PhantomKind::blob: return "blob";
    case PhantomKind::high_curvature: return "high-curvature";
    case PhantomKind::custom_curve: return "custom-curve";
  }
  return "unknown";
}

Polyline phantom_curve(const PhantomSpec& spec) {
  require(spec.control_points.size() >= 3, "curve phantom needs at least 3 control points");
  return periodic_spline(spec.control_points, 0.25 / spec.size);
}

void validate(const PhantomSpec& spec) {
  require(spec.size >= 32 && is_pow2(spec.size), "phantom size must be a power of two >= 32");
  switch (spec.kind) {
    case PhantomKind::annulus:
      require(spec.r_in > 0 && spec.r_out > spec.r_in, "annulus radii must satisfy 0 < r_in < r_out");
      require(inside_margin(spec.cx - spec.r_out, spec.cy - spec.r_out) && inside_margin(spec.cx + spec.r_out, spec.cy + spec.r_out),
              "annulus leaves the [0.05,0.95]^2 margin");
      break;
    case PhantomKind::ellipse_group:
      for (size_t i = 0; i < spec.ellipses.size(); ++i) {
        const auto& e = spec.ellipses[i];
        require(e.a > 0 && e.b > 0, "ellipse semi-axes must be positive");
        double c = std::cos(e.angle), s = std::sin(e.angle);
        double hx = std::sqrt(e.a * e.a * c * c + e.b * e.b * s * s);
        double hy = std::sqrt(e.a * e.a * s * s + e.b * e.b * c * c);
        require(inside_margin(e.cx - hx, e.cy - hy) && inside_margin(e.cx + hx, e.cy + hy),
                "ellipse " + std::to_string(i) + " leaves the [0.05,0.95]^2 margin");
        for (size_t j = 0; j < i; ++j)
          require(!ellipses_overlap(spec.ellipses[j], e),
                  "ellipses " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
      }
      break;
    case PhantomKind::blob:
    case PhantomKind::high_curvature:
    case PhantomKind::custom_curve:
      for (const auto& p : phantom_curve(spec))
        require(inside_margin(p.x, p.y), "curve leaves the [0.05,0.95]^2 margin");
      break;
  }
}

Image make_phantom(const PhantomSpec& spec) {
  validate(spec);
  const int n = spec.size;
  Image img(n, n);
  auto centre = [n](int i) { return (i + 0.5) / n; };

  switch (spec.kind) {
    case PhantomKind::annulus:
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          double d = std::hypot(centre(c) - spec.cx, centre(r) - spec.cy);
          img(r, c) = (d <= spec.r_out && d >= spec.r_in) ? 1.0 : 0.0;
        }
      break;
    case PhantomKind::ellipse_group:
      for (const auto& e : spec.ellipses)
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c)
            if (ellipse_form(e, centre(c), centre(r)) <= 1) img(r, c) = 1.0;
      break;
    case PhantomKind::blob:
    case PhantomKind::high_curvature:
    case PhantomKind::custom_curve: {
      Polyline curve = phantom_curve(spec);
      double ymin = 1, ymax = 0, xmin = 1, xmax = 0;
      for (const auto& p : curve) {
        xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y), ymax = std::max(ymax, p.y);
      }
      for (int r = 0; r < n; ++r) {
        double y = centre(r);
        if (y < ymin || y > ymax) continue;
        for (int c = 0; c < n; ++c) {
          double x = centre(c);
          if (x < xmin || x > xmax) continue;
          if (point_in_polygon(curve, {x, y})) img(r, c) = 1.0;
        }
      }
      break;
    }
  }
  return img;
}

PhantomSpec fixture(const std::string& name, int size) {
  PhantomSpec s;
  s.size = size;
  if (name == "annulus") {
    s.kind = PhantomKind::annulus;
  } else if (name == "ellipses") {
    s.kind = PhantomKind::ellipse_group;
    s.ellipses = {
        {0.27, 0.27, 0.09, 0.12, 15 * kPi / 180},
        {0.73, 0.27, 0.11, 0.08, -20 * kPi / 180},
        {0.27, 0.73, 0.08, 0.11, -15 * kPi / 180},
        {0.73, 0.73, 0.12, 0.085, 30 * kPi / 180},
    };
  } else if (name == "blob") {
    s.kind = PhantomKind::blob;
    s.control_points = polar_curve(0.5, 0.5, 96, [](double phi) {
      return 0.25 * (1 + 0.15 * std::cos(3 * phi) + 0.1 * std::sin(2 * phi));
    });
  } else if (name == "highcurv") {
    // Stand-in shape: a disc with a narrow notch whose bottom has a radius of
    // curvature of about two pixels at size 256.
    s.kind = PhantomKind::high_curvature;
    s.control_points = polar_curve(0.5, 0.5, 240, [](double phi) {
      double u = (phi - kPi / 2) / 0.35;
      return 0.28 * (1 - 0.5 * std::exp(-u * u));
    });
  } else {
    fail(ErrorCode::config, "unknown fixture '" + name + "'");
  }
  return s;
}

std::vector<std::string> fixture_names() { return {"annulus", "ellipses", "blob", "highcurv"}; }

}  // namespace tilt
