#include "tilt/dtcwt.hpp"

#include <algorithm>
#include <cmath>

#include "tilt/error.hpp"

namespace tilt {

namespace {

const std::array<DirectionInfo, 6> kTable = {{
    {SubbandDirection::LH, "LH", -15, 60, 90},
    {SubbandDirection::HH, "HH", -45, 30, 60},
    {SubbandDirection::HL, "HL", -75, 0, 30},
    {SubbandDirection::HLbar, "HLbar", 75, -30, 0},
    {SubbandDirection::HHbar, "HHbar", 45, -60, -30},
    {SubbandDirection::LHbar, "LHbar", 15, -90, -60},
}};

// Position of each direction in the transform's internal output order
// (horizontal pair 0/5, diagonal pair 1/4, vertical pair 2/3), fixed by
// the straight-edge selectivity test.
constexpr std::array<int, 6> kInternalIndex = {0, 1, 2, 3, 4, 5};

// Column-major-agnostic dense real matrix used by the filter stages.
struct Mat {
  int r = 0, c = 0;
  std::vector<double> v;
  Mat() = default;
  Mat(int rows, int cols) : r(rows), c(cols), v(size_t(rows) * cols, 0.0) {}
  double& operator()(int i, int j) { return v[size_t(i) * c + j]; }
  double operator()(int i, int j) const { return v[size_t(i) * c + j]; }
};

Mat transpose(const Mat& a) {
  Mat t(a.c, a.r);
  for (int i = 0; i < a.r; ++i)
    for (int j = 0; j < a.c; ++j) t(j, i) = a(i, j);
  return t;
}

Mat add(Mat a, const Mat& b) {
  for (size_t i = 0; i < a.v.size(); ++i) a.v[i] += b.v[i];
  return a;
}

// Indices from..to-1 reflected into [0, r) with repeated end samples.
std::vector<int> reflect_range(int from, int to, int r) {
  std::vector<int> out;
  for (int x = from; x < to; ++x) {
    int k = x % (2 * r);
    if (k < 0) k += 2 * r;
    out.push_back(k < r ? k : 2 * r - 1 - k);
  }
  return out;
}

// Valid part of the convolution of the row sequence X[rows[.]] with h:
// out[i] = sum_k h[k] X[rows[i + m - 1 - k]].
std::vector<double> conv_valid(const Mat& X, const std::vector<int>& rows, const std::vector<double>& h, int& out_rows) {
  int m = int(h.size());
  out_rows = int(rows.size()) - m + 1;
  std::vector<double> out(size_t(out_rows) * X.c, 0.0);
  for (int i = 0; i < out_rows; ++i) {
    double* o = out.data() + size_t(i) * X.c;
    for (int k = 0; k < m; ++k) {
      const double* x = X.v.data() + size_t(rows[size_t(i + m - 1 - k)]) * X.c;
      double hk = h[size_t(k)];
      for (int j = 0; j < X.c; ++j) o[j] += hk * x[j];
    }
  }
  return out;
}

std::vector<int> pick(const std::vector<int>& xe, const std::vector<int>& t, int shift) {
  std::vector<int> out;
  out.reserve(t.size());
  for (int i : t) out.push_back(xe[size_t(i + shift)]);
  return out;
}

std::vector<double> taps(const std::vector<double>& h, int start) {
  std::vector<double> out;
  for (size_t i = size_t(start); i < h.size(); i += 2) out.push_back(h[i]);
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Filters the columns of X with odd-length h, no decimation.
Mat colfilter(const Mat& X, const std::vector<double>& h) {
  int m2 = int(h.size()) / 2;
  auto xe = reflect_range(-m2, X.r + m2, X.r);
  Mat Y;
  Y.c = X.c;
  Y.v = conv_valid(X, xe, h, Y.r);
  return Y;
}

// Two-tree decimating column filter (Q-shift).
Mat coldfilt(const Mat& X, const std::vector<double>& ha, const std::vector<double>& hb) {
  const int r = X.r, m = int(ha.size());
  require(r % 4 == 0, "coldfilt needs a row count divisible by 4", ErrorCode::internal);
  auto xe = reflect_range(-m, r + m, r);
  auto hao = taps(ha, 0), hae = taps(ha, 1), hbo = taps(hb, 0), hbe = taps(hb, 1);
  std::vector<int> t;
  for (int i = 5; i < r + 2 * m - 2; i += 4) t.push_back(i);
  const int r2 = r / 2;
  Mat Y(r2, X.c);
  int s1 = 0, s2 = 1;
  if (!(dot(ha, hb) > 0)) std::swap(s1, s2);
  int n = 0;
  auto a1 = conv_valid(X, pick(xe, t, -1), hao, n);
  auto a2 = conv_valid(X, pick(xe, t, -3), hae, n);
  auto b1 = conv_valid(X, pick(xe, t, 0), hbo, n);
  auto b2 = conv_valid(X, pick(xe, t, -2), hbe, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < X.c; ++j) {
      size_t k = size_t(i) * X.c + j;
      Y(s1 + 2 * i, j) = a1[k] + a2[k];
      Y(s2 + 2 * i, j) = b1[k] + b2[k];
    }
  return Y;
}

// Two-tree interpolating column filter (Q-shift synthesis).
Mat colifilt(const Mat& X, const std::vector<double>& ha, const std::vector<double>& hb) {
  const int r = X.r, m = int(ha.size()), m2 = m / 2;
  require(r % 2 == 0, "colifilt needs an even row count", ErrorCode::internal);
  Mat Y(2 * r, X.c);
  auto xe = reflect_range(-m2, r + m2, r);
  auto hao = taps(ha, 0), hae = taps(ha, 1), hbo = taps(hb, 0), hbe = taps(hb, 1);
  const bool same = dot(ha, hb) > 0;
  std::vector<int> t;
  std::vector<double> y0, y1, y2, y3;
  int n = 0;
  if (m2 % 2 == 0) {
    for (int i = 3; i < r + m; i += 2) t.push_back(i);
    int ta = same ? 0 : -1, tb = same ? -1 : 0;
    y0 = conv_valid(X, pick(xe, t, tb - 2), hae, n);
    y1 = conv_valid(X, pick(xe, t, ta - 2), hbe, n);
    y2 = conv_valid(X, pick(xe, t, tb), hao, n);
    y3 = conv_valid(X, pick(xe, t, ta), hbo, n);
  } else {
    for (int i = 2; i < r + m - 1; i += 2) t.push_back(i);
    int ta = same ? 0 : -1, tb = same ? -1 : 0;
    y0 = conv_valid(X, pick(xe, t, tb), hao, n);
    y1 = conv_valid(X, pick(xe, t, ta), hbo, n);
    y2 = conv_valid(X, pick(xe, t, tb), hae, n);
    y3 = conv_valid(X, pick(xe, t, ta), hbe, n);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < X.c; ++j) {
      size_t k = size_t(i) * X.c + j;
      Y(4 * i, j) = y0[k];
      Y(4 * i + 1, j) = y1[k];
      Y(4 * i + 2, j) = y2[k];
      Y(4 * i + 3, j) = y3[k];
    }
  return Y;
}

// Quad of real samples to a pair of complex subbands.
std::pair<ComplexGrid, ComplexGrid> q2c(const Mat& y) {
  const double s = std::sqrt(0.5);
  ComplexGrid z1(y.r / 2, y.c / 2), z2(y.r / 2, y.c / 2);
  for (int i = 0; i < y.r / 2; ++i)
    for (int j = 0; j < y.c / 2; ++j) {
      double a = y(2 * i, 2 * j), b = y(2 * i, 2 * j + 1);
      double c = y(2 * i + 1, 2 * j), d = y(2 * i + 1, 2 * j + 1);
      std::complex<double> p(a * s, b * s), q(d * s, -c * s);
      z1(i, j) = p - q;
      z2(i, j) = p + q;
    }
  return {z1, z2};
}

Mat c2q(const ComplexGrid& w1, const ComplexGrid& w2) {
  const double s = std::sqrt(0.5);
  Mat x(w1.rows * 2, w1.cols * 2);
  for (int i = 0; i < w1.rows; ++i)
    for (int j = 0; j < w1.cols; ++j) {
      auto P = w1(i, j) * s + w2(i, j) * s;
      auto Q = w1(i, j) * s - w2(i, j) * s;
      x(2 * i, 2 * j) = P.real();
      x(2 * i, 2 * j + 1) = P.imag();
      x(2 * i + 1, 2 * j) = Q.imag();
      x(2 * i + 1, 2 * j + 1) = -Q.real();
    }
  return x;
}

ComplexGrid& slot(std::array<ComplexGrid, 6>& level, int internal) {
  for (int d = 0; d < 6; ++d)
    if (kInternalIndex[size_t(d)] == internal) return level[size_t(d)];
  fail(ErrorCode::internal, "bad subband index");
}

const ComplexGrid& slot(const std::array<ComplexGrid, 6>& level, int internal) {
  return slot(const_cast<std::array<ComplexGrid, 6>&>(level), internal);
}

void store_pair(std::array<ComplexGrid, 6>& level, int i1, int i2, std::pair<ComplexGrid, ComplexGrid> z) {
  slot(level, i1) = std::move(z.first);
  slot(level, i2) = std::move(z.second);
}

Mat to_mat(const Image& img) {
  Mat m(img.rows, img.cols);
  m.v = img.data;
  return m;
}

}  // namespace

const DirectionInfo& direction_info(SubbandDirection d) { return kTable[size_t(d)]; }

SubbandDirection direction_from_label(const std::string& label) {
  for (const auto& e : kTable)
    if (label == e.label) return e.dir;
  fail(ErrorCode::invalid_argument, "unknown subband label '" + label + "'");
}

const FilterBank& default_filters() {
  static const FilterBank fb = [] {
    FilterBank f;
    // near_sym_b
    f.h0o = {-0.0017578125, 0.0,       0.022265625, -0.046875,     -0.0482421875, 0.296875, 0.55546875,
             0.296875,      -0.0482421875, -0.046875, 0.022265625, 0.0,           -0.0017578125};
    f.g0o = {7.062639508928571e-05, 0.0,  -0.0013419015066964285, -0.0018833705357142855, 0.007156808035714285,
             0.023856026785714284,  -0.05564313616071428, -0.05168805803571428, 0.29975760323660716,
             0.5594308035714286,    0.29975760323660716,  -0.05168805803571428, -0.05564313616071428,
             0.023856026785714284,  0.007156808035714285, -0.0018833705357142855, -0.0013419015066964285,
             0.0,                   7.062639508928571e-05};
    f.h1o = {-7.062639508928571e-05, 0.0, 0.0013419015066964285, -0.0018833705357142855, -0.007156808035714285,
             0.023856026785714284,   0.05564313616071428,   -0.05168805803571428, -0.29975760323660716,
             0.5594308035714286,     -0.29975760323660716,  -0.05168805803571428, 0.05564313616071428,
             0.023856026785714284,   -0.007156808035714285, -0.0018833705357142855, 0.0013419015066964285,
             0.0,                    -7.062639508928571e-05};
    f.g1o = {-0.0017578125, -0.0,         0.022265625, 0.046875,  -0.0482421875, -0.296875, 0.55546875,
             -0.296875,     -0.0482421875, 0.046875,   0.022265625, -0.0,         -0.0017578125};
    // qshift_b, moved by at most 1.3e-7 onto the nearest orthonormal filter
    // with H0(π) = 0 so constants leave no detail energy.
    f.h0a = {0.0032531314539378485, -0.0038832003841907654, 0.03466023000825229,  -0.03887268833066862,
             -0.11720401465701727,  0.27529548310269075,    0.7561455337234387,   0.568810532359082,
             0.01186597400431464,   -0.10671169218758102,   0.023825382688208774, 0.017025223370035186,
             -0.0054394560345875365, -0.004556876742820043};
    f.h0b.assign(f.h0a.rbegin(), f.h0a.rend());
    f.g0a = f.h0b;
    f.g0b = f.h0a;
    const size_t m = f.h0a.size();
    f.h1a.resize(m);
    f.h1b.resize(m);
    for (size_t k = 0; k < m; ++k) {
      f.h1a[k] = (k % 2 ? -1 : 1) * f.h0a[m - 1 - k];
      f.h1b[k] = (k % 2 ? 1 : -1) * f.h0a[k];
    }
    f.g1a = f.h1b;
    f.g1b = f.h1a;
    return f;
  }();
  return fb;
}

SubbandPyramid dtcwt_forward(const Image& image, int levels) {
  const int n = image.rows;
  require(image.rows == image.cols, "wavelet transform needs a square image");
  require(n >= 2 && (n & (n - 1)) == 0, "wavelet transform needs a power-of-two side");
  require(levels >= 1 && (n >> levels) >= 1, "too many wavelet levels for image size");
  const auto& f = default_filters();

  SubbandPyramid pyr;
  pyr.levels.resize(size_t(levels));
  Mat X = to_mat(image);

  Mat Lo = transpose(colfilter(X, f.h0o));
  Mat Hi = transpose(colfilter(X, f.h1o));
  Mat LoLo = transpose(colfilter(Lo, f.h0o));
  store_pair(pyr.levels[0], 0, 5, q2c(transpose(colfilter(Hi, f.h0o))));
  store_pair(pyr.levels[0], 2, 3, q2c(transpose(colfilter(Lo, f.h1o))));
  store_pair(pyr.levels[0], 1, 4, q2c(transpose(colfilter(Hi, f.h1o))));

  for (int lev = 1; lev < levels; ++lev) {
    require(LoLo.r % 4 == 0 && LoLo.c % 4 == 0, "image too small for requested levels");
    Lo = transpose(coldfilt(LoLo, f.h0b, f.h0a));
    Hi = transpose(coldfilt(LoLo, f.h1b, f.h1a));
    LoLo = transpose(coldfilt(Lo, f.h0b, f.h0a));
    auto& L = pyr.levels[size_t(lev)];
    store_pair(L, 0, 5, q2c(transpose(coldfilt(Hi, f.h0b, f.h0a))));
    store_pair(L, 2, 3, q2c(transpose(coldfilt(Lo, f.h1b, f.h1a))));
    store_pair(L, 1, 4, q2c(transpose(coldfilt(Hi, f.h1b, f.h1a))));
  }
  pyr.lowpass = Image(LoLo.r, LoLo.c, image.pixel_size);
  pyr.lowpass.data = LoLo.v;
  return pyr;
}

Image dtcwt_inverse(const SubbandPyramid& pyr) {
  require(pyr.depth() >= 1, "empty pyramid");
  for (int lev = 1; lev <= pyr.depth(); ++lev) {
    const auto& L = pyr.levels[size_t(lev - 1)];
    for (const auto& g : L)
      require(g.rows == L[0].rows && g.cols == L[0].cols && g.data.size() == size_t(g.rows) * g.cols,
              "malformed pyramid level " + std::to_string(lev));
  }
  const auto& f = default_filters();
  Mat Z = to_mat(pyr.lowpass);
  for (int lev = pyr.depth(); lev >= 2; --lev) {
    const auto& L = pyr.levels[size_t(lev - 1)];
    require(Z.r == 2 * L[0].rows && Z.c == 2 * L[0].cols, "pyramid lowpass/level sizes disagree");
    Mat lh = c2q(slot(L, 0), slot(L, 5));
    Mat hl = c2q(slot(L, 2), slot(L, 3));
    Mat hh = c2q(slot(L, 1), slot(L, 4));
    Mat y1 = add(colifilt(Z, f.g0b, f.g0a), colifilt(lh, f.g1b, f.g1a));
    Mat y2 = add(colifilt(hl, f.g0b, f.g0a), colifilt(hh, f.g1b, f.g1a));
    Z = transpose(add(colifilt(transpose(y1), f.g0b, f.g0a), colifilt(transpose(y2), f.g1b, f.g1a)));
  }
  const auto& L = pyr.levels[0];
  require(Z.r == 2 * L[0].rows && Z.c == 2 * L[0].cols, "pyramid lowpass/level sizes disagree");
  Mat lh = c2q(slot(L, 0), slot(L, 5));
  Mat hl = c2q(slot(L, 2), slot(L, 3));
  Mat hh = c2q(slot(L, 1), slot(L, 4));
  Mat y1 = add(colfilter(Z, f.g0o), colfilter(lh, f.g1o));
  Mat y2 = add(colfilter(hl, f.g0o), colfilter(hh, f.g1o));
  Z = transpose(add(colfilter(transpose(y1), f.g0o), colfilter(transpose(y2), f.g1o)));
  Image out(Z.r, Z.c, pyr.lowpass.pixel_size);
  out.data = Z.v;
  return out;
}

Image normalize_subband(const SubbandPyramid& pyr, SubbandDirection d, int level) {
  require(level >= 1 && level <= pyr.depth(), "subband level outside pyramid");
  const auto& g = pyr.at(level, d);
  Image out(g.rows, g.cols);
  double mx = 0;
  for (size_t i = 0; i < g.data.size(); ++i) {
    out.data[i] = std::abs(g.data[i]);
    mx = std::max(mx, out.data[i]);
  }
  if (mx > 0)
    for (auto& v : out.data) v /= mx;
  return out;
}

BinaryGrid threshold_subband(const Image& c, double t) {
  BinaryGrid g(c.rows, c.cols);
  for (size_t i = 0; i < c.data.size(); ++i) g.raw()[i] = c.data[i] >= t ? 1 : 0;
  return g;
}

}  // namespace tilt
