#pragma once

#include <optional>
#include <vector>

#include "tilt/grid.hpp"

namespace tilt {

// literal: some (x, y) is set in both the bottom and the top layer within
// the component. relaxed: the component touches both layers anywhere.
enum class StatementMode { literal, relaxed };

struct ComponentMatrix {
  int id = 0;
  size_t count = 0;
  VoxelStack voxels;
};

// 26-connected labels; -1 for empty voxels. Labels are numbered by the
// raster position (z, y, x) of each component's first voxel.
struct Labeling {
  std::vector<int> labels;
  std::vector<size_t> sizes;
  int count() const { return int(sizes.size()); }
};

Labeling label_components(const VoxelStack& m);
std::vector<ComponentMatrix> components(const VoxelStack& m);
ComponentMatrix extract_component(const VoxelStack& m, const Labeling& lab, int id);

// Label of the first component bridging the bottom and top layers, or -1.
int bridging_label(const VoxelStack& m, const Labeling& lab, StatementMode mode = StatementMode::literal);
std::optional<ComponentMatrix> bridging_component(const VoxelStack& m, StatementMode mode = StatementMode::literal);

struct FiltrationBirth {
  size_t index = 0;
  ComponentMatrix component;
};

// Stacks must be nested (each a subset of the next); throws
// ErrorCode::not_nested naming the first offending voxel otherwise.
std::optional<FiltrationBirth> filtration_birth(const std::vector<VoxelStack>& stacks,
                                                StatementMode mode = StatementMode::literal);

}  // namespace tilt
