#pragma once

#include <string>
#include <vector>

#include "tilt/candywrap.hpp"
#include "tilt/cubical.hpp"
#include "tilt/curve.hpp"
#include "tilt/grid.hpp"

namespace tilt {

// Rotation angles for the bar-side neighbourhoods. mirror: HHbar uses π/3 and
// LHbar π/6, the mirror images of the HH/LH rotations. literal: HHbar π/6,
// LHbar π/3 as displayed in the original DM formulas.
enum class BarRotation { mirror, literal };

// formula: union of erosion residues with the 3×3 element. thinning:
// Zhang–Suen, which keeps the skeleton of an arc in one piece.
enum class SkeletonMethod { formula, thinning };

// Which layers of a found component are subtracted from the subband grids.
// bottom: layers 1 and 2 only. all: layers 1, 7, 13 from SB_HL and 2, 8
// from SB_HLbar.
enum class RemovalLayers { bottom, all };

// stack: skeleton voxels of the 2-layer stack with exactly one 26-neighbour.
// merged: tips of the skeleton of SB_HL ∪ SB_HLbar, assigned to every layer
// containing the tip. Overlapping HL/HLbar arcs give parallel skeletons that
// hide their tips from the stack rule.
enum class EndpointRule { stack, merged };

struct TiltConfig {
  int level = 7;              // W: subband grid side is 2^W
  double threshold = 0.1;     // t
  int line_length = 9;        // l
  int mask_n = 64;            // N
  double mask_cell_px = 1.0;  // subband pixels per mask cell
  double s0 = 1.0;
  double step = 0.5;  // z
  double s_max = 12.0;
  int endpoint_radius = 1;
  StatementMode statement = StatementMode::literal;
  BarRotation bar_rotation = BarRotation::mirror;
  SkeletonMethod skeleton = SkeletonMethod::thinning;
  RemovalLayers removal = RemovalLayers::all;
  EndpointRule endpoints = EndpointRule::merged;
};

void validate(const TiltConfig& cfg);

struct SubbandPair {
  BinaryGrid hl, hlbar;
};

struct EndpointSet {
  BinaryGrid hl_up, hl_down, hlbar_up, hlbar_down;
};

struct DmSet {
  BinaryGrid hh, hhbar, lh, lhbar;
};

// Decomposition level used for the W-th subband grid of an image of side n.
int decomposition_level(int image_size, int W);

SubbandPair compute_subbands(const Image& r, const TiltConfig& cfg);
EndpointSet find_endpoints(const BinaryGrid& sb_hl, const BinaryGrid& sb_hlbar, const TiltConfig& cfg);

// Rotated candywrap stamps for one distance s, reused across DM builds.
struct MaskSet {
  double s = 0;
  BinaryGrid hh_up, hh_down, lh_up, lh_down;
  BinaryGrid hhbar_up, hhbar_down, lhbar_up, lhbar_down;
};
MaskSet make_masks(double s, const TiltConfig& cfg);

DmSet build_dm(const EndpointSet& e, const MaskSet& masks);
DmSet build_dm(const EndpointSet& e, double s, const TiltConfig& cfg);

// Layers (one-based): 1, 7, 13 SB_HL; 2, 8 SB_HLbar; 3, 9 DM_HHbar;
// 4, 10 DM_LHbar; 5, 11 DM_LH; 6, 12 DM_HH.
VoxelStack assemble_as(const BinaryGrid& sb_hl, const BinaryGrid& sb_hlbar, const DmSet& dm);

// Closed curve in image pixel coordinates (x = column, y = row).
struct SplineResult {
  Polyline curve;
  std::vector<Polyline> traced;  // arc centrelines in boundary order
  int arcs = 0;
  bool fallback = false;  // fewer than two arcs and no closed ring
  bool closed_ring = false;
};

// scale: image pixels per subband pixel.
SplineResult spline_fill(const ComponentMatrix& component, const BinaryGrid& sb_hl, const BinaryGrid& sb_hlbar,
                         double scale);

struct FoundComponent {
  int index = 0;
  double birth_s = 0;
  ComponentMatrix matrix;
  BinaryGrid projection;
  SplineResult spline;
};

struct IterationRecord {
  double s = 0;
  int components = 0;
  bool found = false;
};

struct TiltReport {
  TiltConfig config;
  int image_size = 0;
  int subband_size = 0;
  double scale = 1.0;
  SubbandPair subbands;
  std::vector<FoundComponent> found;
  std::vector<IterationRecord> iterations;
  bool complete = false;
  double final_s = 0;
  struct Timings {
    double subbands_ms = 0, loop_ms = 0, splines_ms = 0;
  } timings;
};

TiltReport run_tilt(const Image& r, const TiltConfig& cfg);

// Run-length encoding of a grid in raster order: [start, length] pairs.
std::vector<std::pair<size_t, size_t>> run_length(const BinaryGrid& g);

}  // namespace tilt
