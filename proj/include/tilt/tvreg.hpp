#pragma once

#include <vector>

#include "tilt/grid.hpp"
#include "tilt/projection.hpp"

namespace tilt {

struct TvConfig {
  double alpha = 1.0;
  int iterations = 500;
  bool nonnegativity = true;
  int checkpoint_every = 50;
  // 0 selects the power-method estimate of ||[A; mu grad]||.
  double operator_norm = 0.0;
  // Weight mu of the gradient block in K = [A; mu grad]; 0 selects
  // ||A|| / sqrt(8) so both blocks have comparable norms.
  double gradient_weight = 0.0;
};

struct TvCheckpoint {
  int iteration = 0;
  double objective = 0;  // objective of the iterate at this checkpoint
  double best = 0;       // smallest objective seen so far (reported value)
};

struct TvResult {
  Image image;  // iterate with the smallest checkpointed objective
  std::vector<TvCheckpoint> checkpoints;
  double operator_norm = 0;
  double gradient_weight = 0;
};

// Isotropic TV with forward differences; the difference across the last
// row/column is zero.
double total_variation(const Image& f);
// ||Af - m||^2 + alpha TV(f).
double tv_objective(const Image& f, const Sinogram& m, const ScanGeometry& g, double alpha);

double estimate_operator_norm(const ScanGeometry& g, double gradient_weight = 1.0, int max_iterations = 100);

TvResult reconstruct_tv(const Sinogram& sino, const ScanGeometry& g, const TvConfig& cfg);

}  // namespace tilt
