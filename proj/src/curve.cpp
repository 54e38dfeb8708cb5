#include "tilt/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tilt/error.hpp"

namespace tilt {

namespace {

double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Solves a cyclic tridiagonal system a[i] x[i-1] + b[i] x[i] + c[i] x[i+1] = d[i]
// (indices mod n) with Sherman-Morrison. n >= 3.
std::vector<double> solve_cyclic(std::vector<double> a, std::vector<double> b, std::vector<double> c, std::vector<double> d) {
  size_t n = b.size();
  double alpha = c[n - 1], beta = a[0];
  double gamma = -b[0];
  b[0] -= gamma;
  b[n - 1] -= alpha * beta / gamma;

  auto thomas = [&](std::vector<double> rhs) {
    std::vector<double> cp(n), x(n);
    double m = b[0];
    cp[0] = c[0] / m;
    rhs[0] /= m;
    for (size_t i = 1; i < n; ++i) {
      m = b[i] - a[i] * cp[i - 1];
      cp[i] = c[i] / m;
      rhs[i] = (rhs[i] - a[i] * rhs[i - 1]) / m;
    }
    x[n - 1] = rhs[n - 1];
    for (size_t i = n - 1; i-- > 0;) x[i] = rhs[i] - cp[i] * x[i + 1];
    return x;
  };

  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  auto y = thomas(d);
  auto z = thomas(u);
  double fact = (y[0] + beta * y[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
  for (size_t i = 0; i < n; ++i) y[i] -= fact * z[i];
  return y;
}

// Second derivatives of the periodic spline through values v at knot gaps h.
std::vector<double> periodic_moments(const std::vector<double>& v, const std::vector<double>& h) {
  size_t n = v.size();
  std::vector<double> a(n), b(n), c(n), d(n);
  for (size_t i = 0; i < n; ++i) {
    size_t ip = (i + 1) % n, im = (i + n - 1) % n;
    double hm = h[im], hi = h[i];
    a[i] = hm;
    b[i] = 2 * (hm + hi);
    c[i] = hi;
    d[i] = 6 * ((v[ip] - v[i]) / hi - (v[i] - v[im]) / hm);
  }
  return solve_cyclic(a, b, c, d);
}

}  // namespace

Polyline periodic_spline(const Polyline& ctrl_in, double max_spacing) {
  require(max_spacing > 0, "spline spacing must be positive");
  Polyline ctrl;
  for (const auto& p : ctrl_in)
    if (ctrl.empty() || dist(ctrl.back(), p) > 1e-12) ctrl.push_back(p);
  while (ctrl.size() > 1 && dist(ctrl.front(), ctrl.back()) <= 1e-12) ctrl.pop_back();
  if (ctrl.size() < 3) return densify_closed(ctrl, max_spacing);

  size_t n = ctrl.size();
  std::vector<double> h(n), xs(n), ys(n);
  for (size_t i = 0; i < n; ++i) {
    h[i] = dist(ctrl[i], ctrl[(i + 1) % n]);
    xs[i] = ctrl[i].x;
    ys[i] = ctrl[i].y;
  }
  auto mx = periodic_moments(xs, h);
  auto my = periodic_moments(ys, h);

  Polyline out;
  for (size_t i = 0; i < n; ++i) {
    size_t ip = (i + 1) % n;
    double hi = h[i];
    auto eval = [&](double t) {
      double A = (hi - t) / hi, B = t / hi;
      auto f = [&](const std::vector<double>& v, const std::vector<double>& m) {
        return A * v[i] + B * v[ip] + ((A * A * A - A) * m[i] + (B * B * B - B) * m[ip]) * hi * hi / 6.0;
      };
      return Point2{f(xs, mx), f(ys, my)};
    };
    // Sample finely, then thin to the requested spacing bound.
    int steps = std::max(1, int(std::ceil(4.0 * hi / max_spacing)));
    for (int k = 0; k < steps; ++k) out.push_back(eval(hi * k / steps));
  }
  return densify_closed(out, max_spacing);
}

Polyline hermite_segment(Point2 p0, Point2 t0, Point2 p1, Point2 t1, double max_spacing) {
  auto eval = [&](double s) {
    double s2 = s * s, s3 = s2 * s;
    double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    return Point2{h00 * p0.x + h10 * t0.x + h01 * p1.x + h11 * t1.x, h00 * p0.y + h10 * t0.y + h01 * p1.y + h11 * t1.y};
  };
  // Bound on the curve length: chord plus tangent magnitudes.
  double bound = dist(p0, p1) + std::hypot(t0.x, t0.y) + std::hypot(t1.x, t1.y);
  int steps = std::max(2, int(std::ceil(bound / max_spacing)) + 1);
  Polyline out;
  for (int k = 1; k < steps; ++k) out.push_back(eval(double(k) / steps));
  return out;
}

Polyline densify_closed(const Polyline& poly, double max_spacing) {
  Polyline out;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    Point2 a = poly[i], b = poly[(i + 1) % n];
    out.push_back(a);
    if (n < 2) break;
    double d = dist(a, b);
    int k = int(std::ceil(d / max_spacing));
    for (int j = 1; j < k; ++j) out.push_back({a.x + (b.x - a.x) * j / k, a.y + (b.y - a.y) * j / k});
  }
  return out;
}

bool point_in_polygon(const Polyline& poly, Point2 p) {
  bool inside = false;
  size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = poly[i];
    const Point2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      double x = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

double hausdorff(const Polyline& a, const Polyline& b) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](const Polyline& p, const Polyline& q) {
    double worst = 0;
    for (const auto& u : p) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& v : q) best = std::min(best, (u.x - v.x) * (u.x - v.x) + (u.y - v.y) * (u.y - v.y));
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

double polyline_length(const Polyline& poly, bool closed) {
  double len = 0;
  for (size_t i = 1; i < poly.size(); ++i) len += dist(poly[i - 1], poly[i]);
  if (closed && poly.size() > 1) len += dist(poly.back(), poly.front());
  return len;
}

}  // namespace tilt
