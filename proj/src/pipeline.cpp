#include "tilt/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <numbers>
#include <optional>

#include "tilt/dtcwt.hpp"
#include "tilt/error.hpp"
#include "tilt/morphology.hpp"

namespace tilt {

namespace {

constexpr double kPi = std::numbers::pi;

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int log2_exact(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return (1 << k) == n ? k : -1;
}

void require_same(const BinaryGrid& a, const BinaryGrid& b) {
  require(a.same_shape(b), "grids differ in size", ErrorCode::size_mismatch);
}

// Clamped difference X \ Y. On 0/1 grids this is the plain set difference.
BinaryGrid clamped_diff(const BinaryGrid& x, const BinaryGrid& y) {
  require_same(x, y);
  return x - y;
}

}  // namespace

void validate(const TiltConfig& cfg) {
  require(cfg.level >= 1, "wavelet level W must be >= 1", ErrorCode::config);
  require(cfg.threshold > 0 && cfg.threshold <= 1, "threshold t must lie in (0, 1]", ErrorCode::config);
  require(cfg.line_length >= 3 && cfg.line_length % 2 == 1, "line length l must be odd and >= 3", ErrorCode::config);
  require(cfg.mask_n >= 8, "mask size N must be >= 8", ErrorCode::config);
  require(cfg.mask_cell_px > 0, "mask cell scale must be positive", ErrorCode::config);
  require(cfg.s0 > 0, "s0 must be positive", ErrorCode::config);
  require(cfg.step > 0, "step z must be positive", ErrorCode::config);
  require(cfg.s_max >= cfg.s0, "s_max must be >= s0", ErrorCode::config);
  require(cfg.endpoint_radius >= 0, "endpoint radius must be >= 0", ErrorCode::config);
}

int decomposition_level(int image_size, int W) {
  int n = log2_exact(image_size);
  require(n > 0, "image side must be a power of two");
  require(W >= 1 && W < n, "wavelet level W exceeds the pyramid depth for this image size");
  return n - W;
}

SubbandPair compute_subbands(const Image& r, const TiltConfig& cfg) {
  validate(cfg);
  require(r.rows == r.cols, "reconstruction must be square", ErrorCode::size_mismatch);
  const int k = decomposition_level(r.rows, cfg.level);
  SubbandPyramid pyr = dtcwt_forward(r, k);
  auto one = [&](SubbandDirection d) {
    BinaryGrid c = threshold_subband(normalize_subband(pyr, d, k), cfg.threshold);
    return dilate(open(c, make_line(d, cfg.line_length)), solid(3));
  };
  return {one(SubbandDirection::HL), one(SubbandDirection::HLbar)};
}

EndpointSet find_endpoints(const BinaryGrid& sb_hl, const BinaryGrid& sb_hlbar, const TiltConfig& cfg) {
  require_same(sb_hl, sb_hlbar);
  const int R = sb_hl.rows(), C = sb_hl.cols();
  auto skel2 = [&](const BinaryGrid& g) {
    return cfg.skeleton == SkeletonMethod::thinning ? thin(g) : skeletonize(g, solid(3));
  };

  BinaryGrid up[2] = {BinaryGrid(R, C), BinaryGrid(R, C)};
  BinaryGrid all[2] = {BinaryGrid(R, C), BinaryGrid(R, C)};
  const int rad = cfg.endpoint_radius;
  auto mark = [&](int z, int r, int c, bool is_up) {
    const BinaryGrid& layer_sb = z == 0 ? sb_hl : sb_hlbar;
    for (int dr = -rad; dr <= rad; ++dr)
      for (int dc = -rad; dc <= rad; ++dc)
        if (layer_sb.get_or_zero(r + dr, c + dc)) {
          all[z].set(r + dr, c + dc);
          if (is_up) up[z].set(r + dr, c + dc);
        }
  };

  if (cfg.endpoints == EndpointRule::merged) {
    BinaryGrid sk = skel2(sb_hl | sb_hlbar);
    for (int r = 0; r < R; ++r)
      for (int c = 0; c < C; ++c) {
        if (!sk.get(r, c)) continue;
        int nb = 0;
        for (int dr = -1; dr <= 1; ++dr)
          for (int dc = -1; dc <= 1; ++dc)
            if ((dr || dc) && sk.get_or_zero(r + dr, c + dc)) ++nb;
        if (nb != 1) continue;
        bool is_up = sk.get_or_zero(r - 1, c - 1) || sk.get_or_zero(r - 1, c) || sk.get_or_zero(r - 1, c + 1);
        if (sb_hl.get(r, c)) mark(0, r, c, is_up);
        if (sb_hlbar.get(r, c)) mark(1, r, c, is_up);
      }
    return {up[0], all[0] - up[0], up[1], all[1] - up[1]};
  }

  VoxelStack sk(2, R, C);
  sk.set_layer(0, skel2(sb_hl));
  sk.set_layer(1, skel2(sb_hlbar));
  for (int z = 0; z < 2; ++z)
    for (int r = 0; r < R; ++r)
      for (int c = 0; c < C; ++c) {
        if (!sk.get(z, r, c)) continue;
        int nb = 0;
        for (int dz = -1; dz <= 1; ++dz)
          for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc)
              if ((dz || dr || dc) && sk.get_or_zero(z + dz, r + dr, c + dc)) ++nb;
        if (nb != 1) continue;
        mark(z, r, c, sk.get_or_zero(z, r - 1, c - 1) || sk.get_or_zero(z, r - 1, c) || sk.get_or_zero(z, r - 1, c + 1));
      }
  return {up[0], all[0] - up[0], up[1], all[1] - up[1]};
}

MaskSet make_masks(double s, const TiltConfig& cfg) {
  const int n = std::max(8, int(std::lround(cfg.mask_n * cfg.mask_cell_px)));
  const CandywrapMask pr = basic_mask(MaskKind::PlusR, s, n), pl = basic_mask(MaskKind::PlusL, s, n);
  const CandywrapMask mr = basic_mask(MaskKind::MinusR, s, n), ml = basic_mask(MaskKind::MinusL, s, n);
  const bool mirror = cfg.bar_rotation == BarRotation::mirror;
  const double hhbar = mirror ? kPi / 3 : kPi / 6, lhbar = mirror ? kPi / 6 : kPi / 3;
  MaskSet m;
  m.s = s;
  m.hh_up = rotate_mask(pl, -kPi / 3);
  m.hh_down = rotate_mask(pr, -kPi / 3);
  m.lh_up = rotate_mask(pl, -kPi / 6);
  m.lh_down = rotate_mask(pr, -kPi / 6);
  m.hhbar_up = rotate_mask(mr, hhbar);
  m.hhbar_down = rotate_mask(ml, hhbar);
  m.lhbar_up = rotate_mask(mr, lhbar);
  m.lhbar_down = rotate_mask(ml, lhbar);
  return m;
}

DmSet build_dm(const EndpointSet& e, const MaskSet& m) {
  BinaryGrid hh_u = dilate(e.hl_up, m.hh_up), hh_d = dilate(e.hl_down, m.hh_down);
  BinaryGrid hb_u = dilate(e.hlbar_up, m.hhbar_up), hb_d = dilate(e.hlbar_down, m.hhbar_down);
  DmSet dm;
  dm.lh = dilate(hh_u, m.lh_up) | dilate(hh_d, m.lh_down);
  dm.lhbar = dilate(hb_u, m.lhbar_up) | dilate(hb_d, m.lhbar_down);
  dm.hh = hh_u | hh_d;
  dm.hhbar = hb_u | hb_d;
  return dm;
}

DmSet build_dm(const EndpointSet& e, double s, const TiltConfig& cfg) { return build_dm(e, make_masks(s, cfg)); }

VoxelStack assemble_as(const BinaryGrid& sb_hl, const BinaryGrid& sb_hlbar, const DmSet& dm) {
  for (const BinaryGrid* g : {&sb_hlbar, &dm.hh, &dm.hhbar, &dm.lh, &dm.lhbar}) require_same(sb_hl, *g);
  VoxelStack a(13, sb_hl.rows(), sb_hl.cols());
  const BinaryGrid* layout[13] = {&sb_hl, &sb_hlbar, &dm.hhbar, &dm.lhbar, &dm.lh, &dm.hh, &sb_hl,
                                  &sb_hlbar, &dm.hhbar, &dm.lhbar, &dm.lh, &dm.hh, &sb_hl};
  for (int z = 0; z < 13; ++z) a.set_layer(z, *layout[z]);
  return a;
}

// ---------------------------------------------------------------- spline fill

namespace {

struct Pix {
  int r, c;
};

// Fraction of each centreline dropped at the tips, and the number of
// centreline points on each side of a gap used to fit its closing circle.
constexpr double kTipTrim = 0.1;
constexpr size_t kGapWindow = 20;
constexpr size_t kEndWindow = 5;

const int kDr[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
const int kDc[8] = {-1, 0, 1, -1, 1, -1, 0, 1};

std::vector<std::vector<Pix>> components8(const BinaryGrid& g) {
  std::vector<std::vector<Pix>> out;
  BinaryGrid seen(g.rows(), g.cols());
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) {
      if (!g.get(r, c) || seen.get(r, c)) continue;
      std::vector<Pix> comp{{r, c}};
      seen.set(r, c);
      for (size_t k = 0; k < comp.size(); ++k)
        for (int d = 0; d < 8; ++d) {
          int rr = comp[k].r + kDr[d], cc = comp[k].c + kDc[d];
          if (g.get_or_zero(rr, cc) && !seen.get(rr, cc)) {
            seen.set(rr, cc);
            comp.push_back({rr, cc});
          }
        }
      out.push_back(std::move(comp));
    }
  return out;
}

// Breadth-first step distances inside g from the seeds; -1 where unreachable.
std::vector<int> bfs(const BinaryGrid& g, const std::vector<Pix>& seeds) {
  std::vector<int> dist(size_t(g.rows()) * g.cols(), -1);
  std::deque<Pix> q;
  for (auto p : seeds)
    if (g.get_or_zero(p.r, p.c) && dist[size_t(p.r) * g.cols() + p.c] < 0) {
      dist[size_t(p.r) * g.cols() + p.c] = 0;
      q.push_back(p);
    }
  while (!q.empty()) {
    Pix p = q.front();
    q.pop_front();
    int dp = dist[size_t(p.r) * g.cols() + p.c];
    for (int d = 0; d < 8; ++d) {
      int rr = p.r + kDr[d], cc = p.c + kDc[d];
      if (!g.get_or_zero(rr, cc)) continue;
      int& dq = dist[size_t(rr) * g.cols() + cc];
      if (dq < 0) {
        dq = dp + 1;
        q.push_back({rr, cc});
      }
    }
  }
  return dist;
}

BinaryGrid grid_of(const std::vector<Pix>& pix, int R, int C) {
  BinaryGrid g(R, C);
  for (auto p : pix) g.set(p.r, p.c);
  return g;
}

// Centreline from one extreme end of the arc to the other: centroids of the
// geodesic distance level sets.
Polyline centreline(const std::vector<Pix>& arc, int R, int C) {
  BinaryGrid g = grid_of(arc, R, C);
  auto d0 = bfs(g, {arc.front()});
  Pix a = arc.front();
  for (auto p : arc)
    if (d0[size_t(p.r) * C + p.c] > d0[size_t(a.r) * C + a.c]) a = p;
  auto d = bfs(g, {a});
  int maxd = 0;
  for (auto p : arc) maxd = std::max(maxd, d[size_t(p.r) * C + p.c]);
  std::vector<double> sx(size_t(maxd) + 1, 0), sy(size_t(maxd) + 1, 0), n(size_t(maxd) + 1, 0);
  for (auto p : arc) {
    size_t k = size_t(d[size_t(p.r) * C + p.c]);
    sx[k] += p.c, sy[k] += p.r, n[k] += 1;
  }
  Polyline line;
  for (size_t k = 0; k < n.size(); ++k)
    if (n[k] > 0) line.push_back({sx[k] / n[k], sy[k] / n[k]});
  // Arc tips lie where the subband response is leakage from neighbouring
  // orientations; there the arc is straightened by the line opening and the
  // 3×3 dilation. Keep the central part.
  const size_t trim = std::max<size_t>(2, size_t(kTipTrim * double(line.size())));
  if (line.size() >= 2 * trim + 5) line = Polyline(line.begin() + std::ptrdiff_t(trim), line.end() - std::ptrdiff_t(trim));
  return line;
}

struct Circle {
  double cx, cy, r;
};

double det3(const double m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Algebraic least-squares circle x² + y² + Dx + Ey + F = 0. Fails for
// (nearly) collinear points.
std::optional<Circle> fit_circle(const Polyline& pts) {
  if (pts.size() < 3) return std::nullopt;
  double mx = 0, my = 0;
  for (auto p : pts) mx += p.x, my += p.y;
  mx /= double(pts.size()), my /= double(pts.size());
  double A[3][3] = {}, b[3] = {};
  for (auto p : pts) {
    double x = p.x - mx, y = p.y - my, f[3] = {x, y, 1}, rhs = -(x * x + y * y);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) A[r][c] += f[r] * f[c];
      b[r] += f[r] * rhs;
    }
  }
  double d = det3(A);
  if (std::abs(d) < 1e-9) return std::nullopt;
  double sol[3];
  for (int k = 0; k < 3; ++k) {
    double M[3][3];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) M[r][c] = c == k ? b[r] : A[r][c];
    sol[k] = det3(M) / d;
  }
  Circle c{mx - sol[0] / 2, my - sol[1] / 2, 0};
  double acc = 0;
  for (auto p : pts) acc += std::hypot(p.x - c.cx, p.y - c.cy);
  c.r = acc / double(pts.size());
  if (!(c.r > 0) || c.r > 1e4) return std::nullopt;
  return c;
}

// Unit tangent of the circle at p, oriented along `along`.
Point2 circle_tangent(const Circle& c, Point2 p, Point2 along) {
  Point2 rv{p.x - c.cx, p.y - c.cy};
  double n = std::hypot(rv.x, rv.y);
  Point2 t{-rv.y / n, rv.x / n};
  if (t.x * along.x + t.y * along.y < 0) t = {-t.x, -t.y};
  return t;
}

// Principal direction of the points, oriented from the first to the last.
Point2 fit_direction(const Polyline& pts) {
  double mx = 0, my = 0;
  for (auto p : pts) mx += p.x, my += p.y;
  mx /= double(pts.size()), my /= double(pts.size());
  double sxx = 0, sxy = 0, syy = 0;
  for (auto p : pts) {
    sxx += (p.x - mx) * (p.x - mx), sxy += (p.x - mx) * (p.y - my), syy += (p.y - my) * (p.y - my);
  }
  double a = 0.5 * std::atan2(2 * sxy, sxx - syy);
  Point2 d{std::cos(a), std::sin(a)};
  Point2 span{pts.back().x - pts.front().x, pts.back().y - pts.front().y};
  if (d.x * span.x + d.y * span.y < 0) d = {-d.x, -d.y};
  return d;
}

Polyline head(const Polyline& l, size_t k) { return Polyline(l.begin(), l.begin() + std::ptrdiff_t(std::min(k, l.size()))); }
Polyline tail(const Polyline& l, size_t k) { return Polyline(l.end() - std::ptrdiff_t(std::min(k, l.size())), l.end()); }

// Closing segment from the end of arc a to the start of arc b. The end
// tangents come from one circle fitted to both sides of the gap; the local
// direction of the last few points orients them and is the fallback.
Polyline close_gap(const Polyline& a, const Polyline& b) {
  Point2 p0 = a.back(), p1 = b.front();
  double chord = std::hypot(p1.x - p0.x, p1.y - p0.y);
  if (chord < 1.0) return {};
  Point2 t0 = fit_direction(tail(a, kEndWindow));
  Point2 t1 = fit_direction(head(b, kEndWindow));
  Polyline both = tail(a, kGapWindow), hb = head(b, kGapWindow);
  both.insert(both.end(), hb.begin(), hb.end());
  if (auto c = fit_circle(both)) {
    t0 = circle_tangent(*c, p0, t0);
    t1 = circle_tangent(*c, p1, t1);
  }
  // Tangent length that reproduces a circular arc turning by the angle
  // between the two end tangents.
  double turn = std::acos(std::clamp(t0.x * t1.x + t0.y * t1.y, -1.0, 1.0));
  turn = std::min(turn, 160.0 * kPi / 180.0);
  double m = chord / std::pow(std::cos(turn / 4), 2);
  return hermite_segment(p0, {m * t0.x, m * t0.y}, p1, {m * t1.x, m * t1.y}, 1.0);
}

// True when the background around the arc splits into more than one
// 4-connected piece, i.e. the arc encloses a hole.
bool encloses_hole(const std::vector<Pix>& arc) {
  int r0 = arc[0].r, r1 = r0, c0 = arc[0].c, c1 = c0;
  for (auto p : arc) r0 = std::min(r0, p.r), r1 = std::max(r1, p.r), c0 = std::min(c0, p.c), c1 = std::max(c1, p.c);
  const int R = r1 - r0 + 3, C = c1 - c0 + 3;
  BinaryGrid fg(R, C);
  for (auto p : arc) fg.set(p.r - r0 + 1, p.c - c0 + 1);
  BinaryGrid seen(R, C);
  std::vector<Pix> stack{{0, 0}};
  seen.set(0, 0);
  while (!stack.empty()) {
    Pix p = stack.back();
    stack.pop_back();
    const int dr[4] = {-1, 1, 0, 0}, dc[4] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) {
      int rr = p.r + dr[k], cc = p.c + dc[k];
      if (fg.inside(rr, cc) && !fg.get(rr, cc) && !seen.get(rr, cc)) {
        seen.set(rr, cc);
        stack.push_back({rr, cc});
      }
    }
  }
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c)
      if (!fg.get(r, c) && !seen.get(r, c)) return true;
  return false;
}

// Pixel centroids in angular bins around the centre, in angle order.
Polyline angular_trace(const std::vector<Pix>& pix, int bins) {
  double cx = 0, cy = 0;
  for (auto p : pix) cx += p.c, cy += p.r;
  cx /= double(pix.size()), cy /= double(pix.size());
  std::vector<double> sx(size_t(bins), 0), sy(size_t(bins), 0), n(size_t(bins), 0);
  for (auto p : pix) {
    double a = std::atan2(p.r - cy, p.c - cx);
    int b = std::clamp(int((a + kPi) / (2 * kPi) * bins), 0, bins - 1);
    sx[size_t(b)] += p.c, sy[size_t(b)] += p.r, n[size_t(b)] += 1;
  }
  Polyline out;
  for (size_t b = 0; b < n.size(); ++b)
    if (n[b] > 0) out.push_back({sx[b] / n[b], sy[b] / n[b]});
  return out;
}

Pix nearest_in(const BinaryGrid& g, Point2 p) {
  Pix best{int(std::lround(p.y)), int(std::lround(p.x))};
  if (g.get_or_zero(best.r, best.c)) return best;
  double bd = 1e300;
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c)
      if (g.get(r, c)) {
        double d = std::hypot(c - p.x, r - p.y);
        if (d < bd) bd = d, best = {r, c};
      }
  return best;
}

}  // namespace

SplineResult spline_fill(const ComponentMatrix& component, const BinaryGrid& sb_hl, const BinaryGrid& sb_hlbar,
                         double scale) {
  require_same(sb_hl, sb_hlbar);
  const VoxelStack& v = component.voxels;
  require(v.rows() == sb_hl.rows() && v.cols() == sb_hl.cols(), "component and subband grids differ in size",
          ErrorCode::size_mismatch);
  const int R = v.rows(), C = v.cols();
  const BinaryGrid proj = v.projection();
  // Visible arcs are the component's own voxels in the subband layers.
  BinaryGrid own(R, C);
  for (int z : {0, 1, 6, 7, 12})
    if (z < v.depth()) own |= v.layer(z);
  const BinaryGrid visible = (sb_hl | sb_hlbar) & own;
  auto to_image = [scale](Point2 p) { return Point2{scale * (p.x + 0.5) - 0.5, scale * (p.y + 0.5) - 0.5}; };

  SplineResult res;
  std::vector<std::vector<Pix>> arcs;
  for (auto& a : components8(visible))
    if (a.size() >= 3) arcs.push_back(std::move(a));
  std::sort(arcs.begin(), arcs.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  res.arcs = int(arcs.size());

  Polyline sub;  // curve in subband coordinates
  if (arcs.size() == 1 && encloses_hole(arcs[0])) {
    res.closed_ring = true;
    sub = angular_trace(arcs[0], std::max(16, int(arcs[0].size() / 2)));
  } else if (arcs.size() < 2) {
    res.fallback = true;
    std::vector<Pix> pts;
    BinaryGrid sk = skeletonize(proj, solid(3));
    for (int r = 0; r < R; ++r)
      for (int c = 0; c < C; ++c)
        if (sk.get(r, c)) pts.push_back({r, c});
    if (pts.size() < 3)
      for (int r = 0; r < R; ++r)
        for (int c = 0; c < C; ++c)
          if (proj.get(r, c)) pts.push_back({r, c});
    Polyline ctrl = pts.empty() ? Polyline{} : angular_trace(pts, 24);
    if (ctrl.size() < 3) {
      double cx = ctrl.empty() ? C / 2.0 : ctrl[0].x, cy = ctrl.empty() ? R / 2.0 : ctrl[0].y;
      ctrl = {{cx + 1, cy}, {cx, cy + 1}, {cx - 1, cy}, {cx, cy - 1}};
    }
    Polyline img;
    for (auto p : ctrl) img.push_back(to_image(p));
    res.curve = periodic_spline(img, 1.0);
    return res;
  } else {
    std::vector<Polyline> lines;
    for (const auto& a : arcs) lines.push_back(centreline(a, R, C));
    // Greedy ordering: from the current end, go to the arc endpoint that is
    // nearest by path length inside the projection.
    std::vector<int> order{0};
    std::vector<char> used(lines.size(), 0);
    used[0] = 1;
    while (order.size() < lines.size()) {
      Point2 end = lines[size_t(order.back())].back();
      auto dist = bfs(proj, {nearest_in(proj, end)});
      double best = 1e300;
      int best_i = -1;
      bool best_rev = false;
      for (size_t i = 0; i < lines.size(); ++i) {
        if (used[i]) continue;
        for (int side = 0; side < 2; ++side) {
          Point2 q = side == 0 ? lines[i].front() : lines[i].back();
          Pix pq = nearest_in(proj, q);
          int dg = dist[size_t(pq.r) * C + pq.c];
          double d = dg >= 0 ? dg : 1e6 + std::hypot(q.x - end.x, q.y - end.y);
          if (d < best) best = d, best_i = int(i), best_rev = side == 1;
        }
      }
      if (best_rev) std::reverse(lines[size_t(best_i)].begin(), lines[size_t(best_i)].end());
      used[size_t(best_i)] = 1;
      order.push_back(best_i);
    }
    Polyline img_curve;
    for (size_t k = 0; k < order.size(); ++k) {
      Polyline a, b;
      for (auto p : lines[size_t(order[k])]) a.push_back(to_image(p));
      for (auto p : lines[size_t(order[(k + 1) % order.size()])]) b.push_back(to_image(p));
      res.traced.push_back(a);
      img_curve.insert(img_curve.end(), a.begin(), a.end());
      Polyline seg = close_gap(a, b);
      img_curve.insert(img_curve.end(), seg.begin(), seg.end());
    }
    res.curve = densify_closed(img_curve, 1.0);
    return res;
  }
  Polyline img;
  for (auto p : sub) img.push_back(to_image(p));
  res.traced = {img};
  res.curve = densify_closed(img, 1.0);
  return res;
}

// ---------------------------------------------------------------- main loop

TiltReport run_tilt(const Image& r, const TiltConfig& cfg) {
  validate(cfg);
  TiltReport rep;
  rep.config = cfg;
  rep.image_size = r.rows;
  auto t0 = std::chrono::steady_clock::now();
  SubbandPair sb = compute_subbands(r, cfg);
  rep.subbands = sb;
  rep.subband_size = sb.hl.rows();
  rep.scale = double(r.rows) / sb.hl.rows();
  EndpointSet e = find_endpoints(sb.hl, sb.hlbar, cfg);
  rep.timings.subbands_ms = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  double spline_ms = 0;
  int steps = 0;
  double s = cfg.s0;
  MaskSet masks = make_masks(s, cfg);
  while (true) {
    if (masks.s != s) masks = make_masks(s, cfg);
    VoxelStack a = assemble_as(sb.hl, sb.hlbar, build_dm(e, masks));
    Labeling lab = label_components(a);
    IterationRecord it{s, lab.count(), false};
    if (lab.count() == 0) {
      rep.iterations.push_back(it);
      rep.complete = true;
      break;
    }
    int id = bridging_label(a, lab, cfg.statement);
    if (id >= 0) {
      it.found = true;
      rep.iterations.push_back(it);
      FoundComponent f;
      f.index = int(rep.found.size());
      f.birth_s = s;
      f.matrix = extract_component(a, lab, id);
      f.projection = f.matrix.voxels.projection();
      auto ts = std::chrono::steady_clock::now();
      f.spline = spline_fill(f.matrix, sb.hl, sb.hlbar, rep.scale);
      spline_ms += ms_since(ts);
      const VoxelStack& cv = f.matrix.voxels;
      BinaryGrid c1 = cv.layer(0), c2 = cv.layer(1);
      if (cfg.removal == RemovalLayers::all) {
        c1 |= cv.layer(6);
        c1 |= cv.layer(12);
        c2 |= cv.layer(7);
      }
      sb.hl = clamped_diff(sb.hl, c1);
      sb.hlbar = clamped_diff(sb.hlbar, c2);
      e.hl_up = clamped_diff(e.hl_up, c1);
      e.hl_down = clamped_diff(e.hl_down, c1);
      e.hlbar_up = clamped_diff(e.hlbar_up, c2);
      e.hlbar_down = clamped_diff(e.hlbar_down, c2);
      rep.found.push_back(std::move(f));
      continue;
    }
    rep.iterations.push_back(it);
    // s is advanced by integer step counts so the sequence of distances does
    // not drift.
    ++steps;
    double next = cfg.s0 + steps * cfg.step;
    if (next > cfg.s_max + 1e-12) break;
    s = next;
  }
  rep.final_s = s;
  rep.timings.loop_ms = ms_since(t0) - spline_ms;
  rep.timings.splines_ms = spline_ms;
  return rep;
}

std::vector<std::pair<size_t, size_t>> run_length(const BinaryGrid& g) {
  std::vector<std::pair<size_t, size_t>> runs;
  const auto& b = g.raw();
  for (size_t i = 0; i < b.size();) {
    if (!b[i]) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < b.size() && b[j]) ++j;
    runs.emplace_back(i, j - i);
    i = j;
  }
  return runs;
}

}  // namespace tilt
