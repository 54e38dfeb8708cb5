#include "tilt/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "tilt/error.hpp"

namespace tilt {

namespace {

struct Run {
  int dr, c0, c1;  // column offsets c0..c1 inclusive in row offset dr
};

std::vector<Run> runs_of(const BinaryGrid& s) {
  std::vector<Run> out;
  for (int r = 0; r < s.rows(); ++r) {
    int c = 0;
    while (c < s.cols()) {
      if (!s.get(r, c)) {
        ++c;
        continue;
      }
      int start = c;
      while (c < s.cols() && s.get(r, c)) ++c;
      out.push_back({r - s.anchor_row(), start - s.anchor_col(), c - 1 - s.anchor_col()});
    }
  }
  return out;
}

// Row prefix counts: p[r*(cols+1) + c] = number of set pixels in row r before c.
std::vector<int> prefix_rows(const BinaryGrid& d) {
  const int R = d.rows(), C = d.cols();
  std::vector<int> p(size_t(R) * (C + 1), 0);
  for (int r = 0; r < R; ++r) {
    int* row = p.data() + size_t(r) * (C + 1);
    for (int c = 0; c < C; ++c) row[c + 1] = row[c] + (d.get(r, c) ? 1 : 0);
  }
  return p;
}

}  // namespace

BinaryGrid erode(const BinaryGrid& d, const BinaryGrid& s) {
  auto runs = runs_of(s);
  require(!runs.empty(), "structuring element is empty");
  const int R = d.rows(), C = d.cols();
  auto p = prefix_rows(d);
  BinaryGrid out(R, C);
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c) {
      bool all = true;
      for (const auto& run : runs) {
        int rr = r + run.dr, a = c + run.c0, b = c + run.c1;
        if (rr < 0 || rr >= R || a < 0 || b >= C) {
          all = false;
          break;
        }
        const int* row = p.data() + size_t(rr) * (C + 1);
        if (row[b + 1] - row[a] != b - a + 1) {
          all = false;
          break;
        }
      }
      if (all) out.set(r, c);
    }
  return out;
}

BinaryGrid dilate(const BinaryGrid& d, const BinaryGrid& s) {
  auto runs = runs_of(s);
  const int R = d.rows(), C = d.cols();
  BinaryGrid out(R, C);
  if (runs.empty() || d.empty()) return out;
  auto p = prefix_rows(d);
  std::vector<char> occupied(size_t(R), 0);
  for (int r = 0; r < R; ++r) occupied[size_t(r)] = p[size_t(r) * (C + 1) + C] > 0;
  auto& bits = out.raw();
  for (const auto& run : runs)
    for (int r = 0; r < R; ++r) {
      // Output row r receives source row r - dr shifted by the run.
      int src = r - run.dr;
      if (src < 0 || src >= R || !occupied[size_t(src)]) continue;
      const int* row = p.data() + size_t(src) * (C + 1);
      uint8_t* o = bits.data() + size_t(r) * C;
      for (int c = 0; c < C; ++c) {
        if (o[c]) continue;
        int a = std::max(0, c - run.c1), b = std::min(C - 1, c - run.c0);
        if (a <= b && row[b + 1] - row[a] > 0) o[c] = 1;
      }
    }
  return out;
}

BinaryGrid open(const BinaryGrid& d, const BinaryGrid& s) { return dilate(erode(d, s), s); }

BinaryGrid complement(const BinaryGrid& d) {
  BinaryGrid out(d.rows(), d.cols(), d.anchor_row(), d.anchor_col());
  for (size_t i = 0; i < d.raw().size(); ++i) out.raw()[i] = d.raw()[i] ? 0 : 1;
  return out;
}

BinaryGrid reflect(const BinaryGrid& s) {
  BinaryGrid out(s.rows(), s.cols(), s.rows() - 1 - s.anchor_row(), s.cols() - 1 - s.anchor_col());
  for (int r = 0; r < s.rows(); ++r)
    for (int c = 0; c < s.cols(); ++c)
      if (s.get(r, c)) out.set(s.rows() - 1 - r, s.cols() - 1 - c);
  return out;
}

BinaryGrid nfold(const BinaryGrid& s, int n) {
  require(n >= 0, "n-fold dilation needs n >= 0");
  BinaryGrid acc(1, 1, 0, 0);
  acc.set(0, 0);
  auto offs = s.offsets();
  require(!offs.empty(), "structuring element is empty");
  for (int k = 0; k < n; ++k) {
    auto cur = acc.offsets();
    int rmin = 0, rmax = 0, cmin = 0, cmax = 0;
    bool first = true;
    std::vector<BinaryGrid::Offset> sum;
    for (auto a : cur)
      for (auto b : offs) {
        BinaryGrid::Offset o{a.dr + b.dr, a.dc + b.dc};
        if (first) rmin = rmax = o.dr, cmin = cmax = o.dc, first = false;
        rmin = std::min(rmin, o.dr), rmax = std::max(rmax, o.dr);
        cmin = std::min(cmin, o.dc), cmax = std::max(cmax, o.dc);
        sum.push_back(o);
      }
    rmin = std::min(rmin, 0), cmin = std::min(cmin, 0);
    rmax = std::max(rmax, 0), cmax = std::max(cmax, 0);
    BinaryGrid next(rmax - rmin + 1, cmax - cmin + 1, -rmin, -cmin);
    for (auto o : sum) next.set(o.dr - rmin, o.dc - cmin);
    acc = std::move(next);
  }
  return acc;
}

BinaryGrid solid(int k) {
  require(k >= 1 && k % 2 == 1, "solid element needs an odd side");
  BinaryGrid s(k, k, k / 2, k / 2);
  for (auto& b : s.raw()) b = 1;
  return s;
}

BinaryGrid skeletonize(const BinaryGrid& d, const BinaryGrid& s) {
  require(!s.empty(), "structuring element is empty");
  require(s.inside(s.anchor_row(), s.anchor_col()) && s.get(s.anchor_row(), s.anchor_col()),
          "skeleton structuring element must contain its origin");
  BinaryGrid skel(d.rows(), d.cols());
  // D ⊖ (n+1)S = (D ⊖ nS) ⊖ S because S contains the origin.
  BinaryGrid e = d;
  while (!e.empty()) {
    skel |= e - open(e, s);
    e = erode(e, s);
  }
  return skel;
}

VoxelStack skeletonize_stack(const VoxelStack& m) {
  require(m.depth() >= 1, "stack depth must be >= 1");
  VoxelStack out(m.depth(), m.rows(), m.cols());
  const BinaryGrid s = solid(3);
  for (int z = 0; z < m.depth(); ++z) out.set_layer(z, skeletonize(m.layer(z), s));
  return out;
}

BinaryGrid thin(const BinaryGrid& d) {
  BinaryGrid g = d;
  const int R = g.rows(), C = g.cols();
  std::vector<std::pair<int, int>> del;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      del.clear();
      for (int r = 0; r < R; ++r)
        for (int c = 0; c < C; ++c) {
          if (!g.get(r, c)) continue;
          // p2..p9 clockwise from north.
          bool p[8] = {g.get_or_zero(r - 1, c),     g.get_or_zero(r - 1, c + 1), g.get_or_zero(r, c + 1),
                       g.get_or_zero(r + 1, c + 1), g.get_or_zero(r + 1, c),     g.get_or_zero(r + 1, c - 1),
                       g.get_or_zero(r, c - 1),     g.get_or_zero(r - 1, c - 1)};
          int b = 0, a = 0;
          for (int k = 0; k < 8; ++k) {
            b += p[k];
            a += !p[k] && p[(k + 1) % 8];
          }
          if (b < 2 || b > 6 || a != 1) continue;
          if (pass == 0 && ((p[0] && p[2] && p[4]) || (p[2] && p[4] && p[6]))) continue;
          if (pass == 1 && ((p[0] && p[2] && p[6]) || (p[0] && p[4] && p[6]))) continue;
          del.emplace_back(r, c);
        }
      for (auto [r, c] : del) g.set(r, c, false);
      changed = changed || !del.empty();
    }
  }
  return g;
}

VoxelStack thin_stack(const VoxelStack& m) {
  VoxelStack out(m.depth(), m.rows(), m.cols());
  for (int z = 0; z < m.depth(); ++z) out.set_layer(z, thin(m.layer(z)));
  return out;
}

BinaryGrid make_line(SubbandDirection d, int l) {
  require(l >= 3 && l % 2 == 1, "line length must be odd and >= 3");
  const auto& info = direction_info(d);
  const double t = (0.5 * (info.interval_lo + info.interval_hi) + 90.0) * std::numbers::pi / 180.0;
  const double cx = std::cos(t), cy = std::sin(t);
  const int h = l / 2;
  std::vector<BinaryGrid::Offset> pts;
  for (int k = -h; k <= h; ++k) {
    if (std::abs(cx) >= std::abs(cy))
      pts.push_back({int(std::round(k * cy / cx)), k});
    else
      pts.push_back({k, int(std::round(k * cx / cy))});
  }
  int rmin = 0, rmax = 0, cmin = 0, cmax = 0;
  for (auto p : pts) {
    rmin = std::min(rmin, p.dr), rmax = std::max(rmax, p.dr);
    cmin = std::min(cmin, p.dc), cmax = std::max(cmax, p.dc);
  }
  BinaryGrid g(rmax - rmin + 1, cmax - cmin + 1, -rmin, -cmin);
  for (auto p : pts) g.set(p.dr - rmin, p.dc - cmin);
  return g;
}

}  // namespace tilt
