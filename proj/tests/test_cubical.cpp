#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tilt/cubical.hpp"
#include "tilt/error.hpp"

using namespace tilt;

namespace {

std::vector<std::vector<size_t>> library_components(const VoxelStack& m) {
  std::vector<std::vector<size_t>> out;
  for (const auto& c : components(m)) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < c.voxels.raw().size(); ++i)
      if (c.voxels.raw()[i]) idx.push_back(i);
    out.push_back(std::move(idx));
  }
  std::sort(out.begin(), out.end());
  return out;
}

VoxelStack random_stack(std::mt19937_64& rng, int d, int r, int c, double p) {
  std::bernoulli_distribution bit(p);
  VoxelStack m(d, r, c);
  for (auto& b : m.raw()) b = bit(rng);
  return m;
}

}  // namespace

TEST(Components, EmptyStack) { EXPECT_TRUE(components(VoxelStack(13, 4, 4)).empty()); }

TEST(Components, SingleVoxel) {
  VoxelStack m(3, 4, 4);
  m.set(1, 2, 3);
  auto cs = components(m);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].count, 1u);
}

TEST(Components, CornerContactJoins) {
  VoxelStack m(2, 2, 2);
  m.set(0, 0, 0);
  m.set(1, 1, 1);
  EXPECT_EQ(components(m).size(), 1u);
  EXPECT_EQ(oracle::flood_components(m).size(), 1u);
}

TEST(Components, MatchesFloodFillOnRandomStacks) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    VoxelStack m = random_stack(rng, 13, 16, 16, 0.08 + 0.002 * i);
    ASSERT_EQ(library_components(m), oracle::flood_components(m)) << "instance " << i;
  }
}

TEST(Bridging, FullStackBridges) {
  VoxelStack m(13, 4, 4);
  for (auto& b : m.raw()) b = 1;
  auto c = bridging_component(m);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->count, m.raw().size());
}

TEST(Bridging, LowerLayersOnlyNeverBridge) {
  VoxelStack m(13, 4, 4);
  for (int z = 0; z < 6; ++z)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m.set(z, r, c);
  EXPECT_FALSE(bridging_component(m).has_value());
  EXPECT_FALSE(bridging_component(m, StatementMode::relaxed).has_value());
}

TEST(Bridging, ColumnIsReturned) {
  VoxelStack m(13, 6, 6);
  for (int z = 0; z < 13; ++z) m.set(z, 2, 3);
  m.set(0, 5, 0);  // stray voxel, not part of the column
  auto c = bridging_component(m);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->count, 13u);
  for (int z = 0; z < 13; ++z) EXPECT_TRUE(c->voxels.get(z, 2, 3));
}

TEST(Bridging, LiteralNeedsSharedPixelRelaxedDoesNot) {
  // A staircase from (0,0) in the bottom layer to (12,12) in the top layer.
  VoxelStack m(13, 13, 13);
  for (int z = 0; z < 13; ++z) m.set(z, z, z);
  EXPECT_FALSE(bridging_component(m, StatementMode::literal).has_value());
  EXPECT_TRUE(bridging_component(m, StatementMode::relaxed).has_value());
}

TEST(Filtration, ConstantBridgingListBirthIsZero) {
  VoxelStack m(13, 3, 3);
  for (int z = 0; z < 13; ++z) m.set(z, 1, 1);
  auto b = filtration_birth({m, m, m});
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->index, 0u);
}

TEST(Filtration, BirthAtConstructedIndex) {
  // Column grows one layer per stack; it reaches the top layer at index 3.
  std::vector<VoxelStack> list;
  for (int k = 0; k < 6; ++k) {
    VoxelStack m(13, 3, 3);
    for (int z = 0; z < std::min(13, 10 + k); ++z) m.set(z, 1, 1);
    list.push_back(m);
  }
  size_t want = 0;
  while (!bridging_component(list[want]).has_value()) ++want;
  ASSERT_EQ(want, 3u);
  auto b = filtration_birth(list);
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->index, want);
}

TEST(Filtration, NonNestedNamesVoxel) {
  VoxelStack a(13, 3, 3), b(13, 3, 3);
  a.set(4, 2, 1);
  try {
    filtration_birth({a, b});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_nested);
    EXPECT_NE(std::string(e.what()).find("z=4, y=2, x=1"), std::string::npos) << e.what();
  }
}
