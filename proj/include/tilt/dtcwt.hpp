#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "tilt/grid.hpp"

namespace tilt {

enum class SubbandDirection { LH = 0, HH, HL, HLbar, HHbar, LHbar };

constexpr std::array<SubbandDirection, 6> kAllDirections = {SubbandDirection::LH,    SubbandDirection::HH,
                                                            SubbandDirection::HL,    SubbandDirection::HLbar,
                                                            SubbandDirection::HHbar, SubbandDirection::LHbar};

// Wavelet orientation and the interval of singularity (edge normal)
// directions the subband responds to, degrees. Angles are measured from the
// +x (column) axis towards +y (row, downwards).
struct DirectionInfo {
  SubbandDirection dir;
  const char* label;
  double orientation_deg;
  double interval_lo, interval_hi;
};

const DirectionInfo& direction_info(SubbandDirection d);
SubbandDirection direction_from_label(const std::string& label);

// Near-symmetric 13/19-tap level-1 filters and 14-tap Q-shift filters for
// deeper levels (Kingsbury's near_sym_b and qshift_b sets).
struct FilterBank {
  std::vector<double> h0o, h1o, g0o, g1o;
  std::vector<double> h0a, h0b, h1a, h1b, g0a, g0b, g1a, g1b;
};
const FilterBank& default_filters();

struct ComplexGrid {
  int rows = 0, cols = 0;
  std::vector<std::complex<double>> data;

  ComplexGrid() = default;
  ComplexGrid(int r, int c) : rows(r), cols(c), data(size_t(r) * c) {}
  std::complex<double>& operator()(int r, int c) { return data[size_t(r) * cols + c]; }
  const std::complex<double>& operator()(int r, int c) const { return data[size_t(r) * cols + c]; }
};

// Level j (1-based) grids have side size / 2^j; the lowpass grid has side
// size / 2^(depth-1).
struct SubbandPyramid {
  std::vector<std::array<ComplexGrid, 6>> levels;  // levels[j-1][int(direction)]
  Image lowpass;

  int depth() const { return int(levels.size()); }
  const ComplexGrid& at(int level, SubbandDirection d) const { return levels.at(size_t(level - 1))[size_t(d)]; }
  ComplexGrid& at(int level, SubbandDirection d) { return levels.at(size_t(level - 1))[size_t(d)]; }
};

SubbandPyramid dtcwt_forward(const Image& image, int levels);
Image dtcwt_inverse(const SubbandPyramid& pyr);

// |C| / max |C|; an all-zero subband maps to all zeros.
Image normalize_subband(const SubbandPyramid& pyr, SubbandDirection d, int level);
BinaryGrid threshold_subband(const Image& c_prime, double t);

}  // namespace tilt
