#include "tilt/cubical.hpp"

#include <numeric>
#include <sstream>

#include "tilt/error.hpp"

namespace tilt {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[size_t(a)] != a) {
      parent[size_t(a)] = parent[size_t(parent[size_t(a)])];
      a = parent[size_t(a)];
    }
    return a;
  }
  // The smaller index becomes the root, so every root is the first voxel of
  // its set in raster order.
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return;
    if (a < b)
      parent[size_t(b)] = a;
    else
      parent[size_t(a)] = b;
  }
};

}  // namespace

Labeling label_components(const VoxelStack& m) {
  const int D = m.depth(), R = m.rows(), C = m.cols();
  const size_t total = size_t(D) * R * C;
  Labeling lab;
  lab.labels.assign(total, -1);
  const auto& bits = m.raw();
  UnionFind uf(total);
  for (int z = 0; z < D; ++z)
    for (int r = 0; r < R; ++r)
      for (int c = 0; c < C; ++c) {
        size_t i = m.index(z, r, c);
        if (!bits[i]) continue;
        // The 13 neighbours that precede (z, r, c) in raster order.
        for (int dz = -1; dz <= 0; ++dz)
          for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc) {
              if (dz == 0 && (dr > 0 || (dr == 0 && dc >= 0))) continue;
              int zz = z + dz, rr = r + dr, cc = c + dc;
              if (!m.inside(zz, rr, cc)) continue;
              size_t j = m.index(zz, rr, cc);
              if (bits[j]) uf.unite(int(i), int(j));
            }
      }
  for (size_t i = 0; i < total; ++i) {
    if (!bits[i]) continue;
    int root = uf.find(int(i));
    if (size_t(root) == i) {
      lab.labels[i] = lab.count();
      lab.sizes.push_back(0);
    } else {
      lab.labels[i] = lab.labels[size_t(root)];
    }
    ++lab.sizes[size_t(lab.labels[i])];
  }
  return lab;
}

ComponentMatrix extract_component(const VoxelStack& m, const Labeling& lab, int id) {
  ComponentMatrix cm;
  cm.id = id;
  cm.count = lab.sizes.at(size_t(id));
  cm.voxels = VoxelStack(m.depth(), m.rows(), m.cols());
  auto& out = cm.voxels.raw();
  for (size_t i = 0; i < lab.labels.size(); ++i)
    if (lab.labels[i] == id) out[i] = 1;
  return cm;
}

std::vector<ComponentMatrix> components(const VoxelStack& m) {
  Labeling lab = label_components(m);
  std::vector<ComponentMatrix> out;
  for (int id = 0; id < lab.count(); ++id) out.push_back(extract_component(m, lab, id));
  return out;
}

int bridging_label(const VoxelStack& m, const Labeling& lab, StatementMode mode) {
  require(m.depth() >= 2, "bridging test needs depth >= 2");
  const int top = m.depth() - 1;
  const size_t ls = m.layer_size();
  int best = -1;
  if (mode == StatementMode::literal) {
    for (size_t i = 0; i < ls; ++i) {
      int a = lab.labels[i], b = lab.labels[size_t(top) * ls + i];
      if (a >= 0 && a == b && (best < 0 || a < best)) best = a;
    }
  } else {
    std::vector<char> bottom(size_t(lab.count()), 0);
    for (size_t i = 0; i < ls; ++i)
      if (lab.labels[i] >= 0) bottom[size_t(lab.labels[i])] = 1;
    for (size_t i = 0; i < ls; ++i) {
      int b = lab.labels[size_t(top) * ls + i];
      if (b >= 0 && bottom[size_t(b)] && (best < 0 || b < best)) best = b;
    }
  }
  return best;
}

std::optional<ComponentMatrix> bridging_component(const VoxelStack& m, StatementMode mode) {
  Labeling lab = label_components(m);
  int id = bridging_label(m, lab, mode);
  if (id < 0) return std::nullopt;
  return extract_component(m, lab, id);
}

std::optional<FiltrationBirth> filtration_birth(const std::vector<VoxelStack>& stacks, StatementMode mode) {
  for (size_t k = 1; k < stacks.size(); ++k) {
    const auto& a = stacks[k - 1];
    const auto& b = stacks[k];
    require(a.depth() == b.depth() && a.rows() == b.rows() && a.cols() == b.cols(), "filtration stacks differ in shape",
            ErrorCode::size_mismatch);
    for (int z = 0; z < a.depth(); ++z)
      for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
          if (a.get(z, r, c) && !b.get(z, r, c)) {
            std::ostringstream msg;
            msg << "filtration not nested: voxel (z=" << z << ", y=" << r << ", x=" << c << ") is set in stack " << k - 1
                << " but not in stack " << k;
            fail(ErrorCode::not_nested, msg.str());
          }
  }
  for (size_t k = 0; k < stacks.size(); ++k)
    if (auto comp = bridging_component(stacks[k], mode)) return FiltrationBirth{k, std::move(*comp)};
  return std::nullopt;
}

}  // namespace tilt
