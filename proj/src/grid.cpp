#include "tilt/grid.hpp"

#include <algorithm>

#include "tilt/error.hpp"

namespace tilt {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
    case ErrorCode::size_mismatch: return "size_mismatch";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::not_nested: return "not_nested";
    case ErrorCode::missing_input: return "missing_input";
    case ErrorCode::malformed_input: return "malformed_input";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

size_t BinaryGrid::count() const { return size_t(std::count(bits_.begin(), bits_.end(), uint8_t(1))); }

static void check_same(const BinaryGrid& a, const BinaryGrid& b) {
  require(a.same_shape(b), "binary grid shapes differ", ErrorCode::size_mismatch);
}

BinaryGrid& BinaryGrid::operator|=(const BinaryGrid& o) {
  check_same(*this, o);
  for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
  return *this;
}

BinaryGrid& BinaryGrid::operator&=(const BinaryGrid& o) {
  check_same(*this, o);
  for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
  return *this;
}

BinaryGrid& BinaryGrid::operator-=(const BinaryGrid& o) {
  check_same(*this, o);
  for (size_t i = 0; i < bits_.size(); ++i) bits_[i] = bits_[i] && !o.bits_[i];
  return *this;
}

std::vector<BinaryGrid::Offset> BinaryGrid::offsets() const {
  std::vector<Offset> out;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (get(r, c)) out.push_back({r - anchor_row_, c - anchor_col_});
  return out;
}

BinaryGrid operator|(BinaryGrid a, const BinaryGrid& b) { return a |= b; }
BinaryGrid operator&(BinaryGrid a, const BinaryGrid& b) { return a &= b; }
BinaryGrid operator-(BinaryGrid a, const BinaryGrid& b) { return a -= b; }

BinaryGrid VoxelStack::layer(int z) const {
  BinaryGrid g(rows_, cols_);
  std::copy_n(bits_.begin() + ptrdiff_t(index(z, 0, 0)), layer_size(), g.raw().begin());
  return g;
}

void VoxelStack::set_layer(int z, const BinaryGrid& g) {
  require(g.rows() == rows_ && g.cols() == cols_, "layer shape differs from stack", ErrorCode::size_mismatch);
  std::copy(g.raw().begin(), g.raw().end(), bits_.begin() + ptrdiff_t(index(z, 0, 0)));
}

size_t VoxelStack::count() const { return size_t(std::count(bits_.begin(), bits_.end(), uint8_t(1))); }

BinaryGrid VoxelStack::projection() const {
  BinaryGrid g(rows_, cols_);
  auto& out = g.raw();
  for (int z = 0; z < depth_; ++z) {
    const uint8_t* p = bits_.data() + index(z, 0, 0);
    for (size_t i = 0; i < layer_size(); ++i) out[i] |= p[i];
  }
  return g;
}

}  // namespace tilt
