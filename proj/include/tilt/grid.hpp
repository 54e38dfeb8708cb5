#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tilt {

// Row-major real image. Physical frame: x grows with the column, y grows with
// the row (downwards), the image is centred on the origin.
struct Image {
  int rows = 0;
  int cols = 0;
  double pixel_size = 1.0;
  std::vector<double> data;

  Image() = default;
  Image(int r, int c, double ps = 1.0) : rows(r), cols(c), pixel_size(ps), data(size_t(r) * c, 0.0) {}

  double& operator()(int r, int c) { return data[size_t(r) * cols + c]; }
  double operator()(int r, int c) const { return data[size_t(r) * cols + c]; }
  size_t size() const { return data.size(); }
};

// Binary grid with an anchor cell. When used as a structuring element the
// offsets of the set cells are taken relative to the anchor.
class BinaryGrid {
 public:
  BinaryGrid() = default;
  BinaryGrid(int rows, int cols) : rows_(rows), cols_(cols), bits_(size_t(rows) * cols, 0) {}
  BinaryGrid(int rows, int cols, int anchor_row, int anchor_col)
      : rows_(rows), cols_(cols), anchor_row_(anchor_row), anchor_col_(anchor_col), bits_(size_t(rows) * cols, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int anchor_row() const { return anchor_row_; }
  int anchor_col() const { return anchor_col_; }
  void set_anchor(int r, int c) {
    anchor_row_ = r;
    anchor_col_ = c;
  }

  bool inside(int r, int c) const { return r >= 0 && c >= 0 && r < rows_ && c < cols_; }
  bool get(int r, int c) const { return bits_[size_t(r) * cols_ + c] != 0; }
  bool get_or_zero(int r, int c) const { return inside(r, c) && get(r, c); }
  void set(int r, int c, bool v = true) { bits_[size_t(r) * cols_ + c] = v ? 1 : 0; }

  size_t count() const;
  bool empty() const { return count() == 0; }
  bool same_shape(const BinaryGrid& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  std::vector<uint8_t>& raw() { return bits_; }
  const std::vector<uint8_t>& raw() const { return bits_; }

  bool operator==(const BinaryGrid& o) const { return same_shape(o) && bits_ == o.bits_; }

  BinaryGrid& operator|=(const BinaryGrid& o);
  BinaryGrid& operator&=(const BinaryGrid& o);
  // Set difference, this minus o.
  BinaryGrid& operator-=(const BinaryGrid& o);

  struct Offset {
    int dr, dc;
  };
  // Offsets of set cells relative to the anchor, raster order.
  std::vector<Offset> offsets() const;

 private:
  int rows_ = 0, cols_ = 0;
  int anchor_row_ = 0, anchor_col_ = 0;
  std::vector<uint8_t> bits_;
};

BinaryGrid operator|(BinaryGrid a, const BinaryGrid& b);
BinaryGrid operator&(BinaryGrid a, const BinaryGrid& b);
BinaryGrid operator-(BinaryGrid a, const BinaryGrid& b);

// Layers are numbered 0..depth-1 in code; layer k here is layer k+1 in the
// usual one-based numbering of the 13-layer stack.
class VoxelStack {
 public:
  VoxelStack() = default;
  VoxelStack(int depth, int rows, int cols) : depth_(depth), rows_(rows), cols_(cols), bits_(size_t(depth) * rows * cols, 0) {}

  int depth() const { return depth_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  size_t layer_size() const { return size_t(rows_) * cols_; }
  size_t index(int z, int r, int c) const { return (size_t(z) * rows_ + r) * cols_ + c; }

  bool inside(int z, int r, int c) const {
    return z >= 0 && r >= 0 && c >= 0 && z < depth_ && r < rows_ && c < cols_;
  }
  bool get(int z, int r, int c) const { return bits_[index(z, r, c)] != 0; }
  bool get_or_zero(int z, int r, int c) const { return inside(z, r, c) && get(z, r, c); }
  void set(int z, int r, int c, bool v = true) { bits_[index(z, r, c)] = v ? 1 : 0; }

  BinaryGrid layer(int z) const;
  void set_layer(int z, const BinaryGrid& g);
  size_t count() const;
  bool empty() const { return count() == 0; }
  // Logical OR over all layers.
  BinaryGrid projection() const;

  std::vector<uint8_t>& raw() { return bits_; }
  const std::vector<uint8_t>& raw() const { return bits_; }
  bool operator==(const VoxelStack& o) const {
    return depth_ == o.depth_ && rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
  }

 private:
  int depth_ = 0, rows_ = 0, cols_ = 0;
  std::vector<uint8_t> bits_;
};

}  // namespace tilt
