#include "tilt/tvreg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "tilt/error.hpp"

namespace tilt {

namespace {

struct Field {
  std::vector<double> x, y;
};

// Forward differences, zero across the last column/row.
void gradient(const Image& f, Field& g) {
  const int n = f.rows, m = f.cols;
  g.x.assign(f.size(), 0.0);
  g.y.assign(f.size(), 0.0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m; ++c) {
      size_t i = size_t(r) * m + c;
      if (c + 1 < m) g.x[i] = f.data[i + 1] - f.data[i];
      if (r + 1 < n) g.y[i] = f.data[i + m] - f.data[i];
    }
}

// Negative adjoint of gradient().
void divergence(const Field& p, int n, int m, std::vector<double>& out) {
  out.assign(size_t(n) * m, 0.0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m; ++c) {
      size_t i = size_t(r) * m + c;
      double v = 0;
      if (c + 1 < m) v += p.x[i];
      if (c > 0) v -= p.x[i - 1];
      if (r + 1 < n) v += p.y[i];
      if (r > 0) v -= p.y[i - m];
      out[i] = v;
    }
}

double norm2(const std::vector<double>& v) {
  double s = 0;
  for (double a : v) s += a * a;
  return s;
}

}  // namespace

double total_variation(const Image& f) {
  Field g;
  gradient(f, g);
  double tv = 0;
  for (size_t i = 0; i < g.x.size(); ++i) tv += std::hypot(g.x[i], g.y[i]);
  return tv;
}

double tv_objective(const Image& f, const Sinogram& m, const ScanGeometry& g, double alpha) {
  Sinogram af = forward_project(f, g);
  double r = 0;
  for (size_t i = 0; i < af.data.size(); ++i) r += (af.data[i] - m.data[i]) * (af.data[i] - m.data[i]);
  return r + alpha * total_variation(f);
}

double estimate_operator_norm(const ScanGeometry& g, double gradient_weight, int max_iterations) {
  validate(g);
  const int n = g.image_size;
  Image x(n, n, g.pixel_size);
  std::mt19937_64 rng(20240229);
  std::uniform_real_distribution<double> uni(0.5, 1.5);
  for (auto& v : x.data) v = uni(rng);
  double nx = std::sqrt(norm2(x.data));
  for (auto& v : x.data) v /= nx;

  Field grad;
  std::vector<double> div;
  double est = 0;
  for (int it = 0; it < max_iterations; ++it) {
    // y = K^T K x
    Image y = apply_adjoint(forward_project(x, g), g);
    if (gradient_weight != 0) {
      gradient(x, grad);
      divergence(grad, n, n, div);
      double w2 = gradient_weight * gradient_weight;
      for (size_t i = 0; i < y.size(); ++i) y.data[i] -= w2 * div[i];
    }
    double ny = std::sqrt(norm2(y.data));
    double next = std::sqrt(ny);  // ||x|| = 1, so ||K^T K x|| -> ||K||^2
    if (ny == 0) return 0.0;
    for (size_t i = 0; i < y.size(); ++i) x.data[i] = y.data[i] / ny;
    bool converged = it > 0 && std::abs(next - est) <= 1e-7 * next;
    est = next;
    if (converged) break;
  }
  return est;
}

TvResult reconstruct_tv(const Sinogram& sino, const ScanGeometry& g, const TvConfig& cfg) {
  require(cfg.alpha > 0, "alpha must be positive");
  require(cfg.iterations >= 1, "iterations must be >= 1");
  require(cfg.checkpoint_every >= 1, "checkpoint interval must be >= 1");
  validate(g);
  require(sino.data.size() == g.views() * size_t(g.detector_count), "sinogram does not match geometry",
          ErrorCode::size_mismatch);

  TvResult res;
  res.gradient_weight = cfg.gradient_weight > 0 ? cfg.gradient_weight : estimate_operator_norm(g, 0.0) / std::sqrt(8.0);
  if (res.gradient_weight == 0) res.gradient_weight = 1.0;
  const double mu = res.gradient_weight;
  res.operator_norm = cfg.operator_norm > 0 ? cfg.operator_norm : estimate_operator_norm(g, mu);
  const double step = 0.99 / res.operator_norm;
  const double sigma = step, tau = step;
  const double radius = cfg.alpha / mu;

  const int n = g.image_size;
  const size_t np = size_t(n) * n;
  Image f(n, n, g.pixel_size), fbar(n, n, g.pixel_size), best(n, n, g.pixel_size);
  std::vector<double> y1(sino.data.size(), 0.0);
  Field y2{std::vector<double>(np, 0.0), std::vector<double>(np, 0.0)};
  Field grad;
  std::vector<double> div;

  const double initial = norm2(sino.data);  // objective at f = 0
  double best_obj = initial;
  res.checkpoints.push_back({0, initial, initial});

  for (int it = 1; it <= cfg.iterations; ++it) {
    // Dual step on the data block: prox of sigma F1* with F1 = ||. - m||^2.
    Sinogram af = forward_project(fbar, g);
    for (size_t i = 0; i < y1.size(); ++i) y1[i] = (y1[i] + sigma * (af.data[i] - sino.data[i])) / (1 + sigma / 2);
    // Dual step on the TV block: projection onto the pointwise ball.
    gradient(fbar, grad);
    for (size_t i = 0; i < np; ++i) {
      double px = y2.x[i] + sigma * mu * grad.x[i];
      double py = y2.y[i] + sigma * mu * grad.y[i];
      double scale = std::max(1.0, std::hypot(px, py) / radius);
      y2.x[i] = px / scale;
      y2.y[i] = py / scale;
    }
    // Primal step.
    Sinogram ys;
    ys.geometry = g;
    ys.data = y1;
    Image aty = apply_adjoint(ys, g);
    divergence(y2, n, n, div);
    for (size_t i = 0; i < np; ++i) {
      double old = f.data[i];
      double v = old - tau * (aty.data[i] - mu * div[i]);
      if (cfg.nonnegativity) v = std::max(0.0, v);
      f.data[i] = v;
      fbar.data[i] = 2 * v - old;
    }

    if (it % cfg.checkpoint_every == 0 || it == cfg.iterations) {
      double obj = tv_objective(f, sino, g, cfg.alpha);
      if (!std::isfinite(obj) || (initial > 0 && obj > 10 * initial)) {
        std::ostringstream msg;
        msg << "TV solver diverged at iteration " << it << ": objective " << obj << " exceeds 10x initial " << initial;
        fail(ErrorCode::divergence, msg.str());
      }
      if (obj <= best_obj) {
        best_obj = obj;
        best.data = f.data;
      }
      res.checkpoints.push_back({it, obj, best_obj});
    }
  }
  res.image = std::move(best);
  return res;
}

}  // namespace tilt
