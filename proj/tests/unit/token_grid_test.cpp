// Copyright 2026 The uicompress Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "uicompress/token_grid.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "uicompress/error.hpp"

namespace uicompress {
namespace {

std::set<std::size_t> as_set(const TokenMask& m) {
  const auto v = m.selected_indices();
  return {v.begin(), v.end()};
}

std::set<std::size_t> boxes_of(const PatchGrid& g, std::vector<BBox> boxes) {
  return as_set(rasterize_boxes(g, boxes));
}

std::set<std::size_t> edge_of(const PatchGrid& g, Point a, Point b) {
  const std::vector<Segment> s{Segment::between(a, b)};
  return as_set(rasterize_edges(g, s));
}

TEST(PatchGridTest, CeilingTiling) {
  const auto g = PatchGrid::make(30, 20, 14);
  EXPECT_EQ(g.cols, 3);
  EXPECT_EQ(g.rows, 2);
  EXPECT_EQ(g.size(), 6u);
  EXPECT_EQ(g.patch_rect(5), (BBox{28, 14, 30, 20, ElementClass::Component, 5}));
  EXPECT_EQ(PatchGrid::make(336, 336).size(), 576u);
  EXPECT_THROW(PatchGrid::make(0, 10), InputError);
  EXPECT_THROW(PatchGrid::make(10, 10, 0), InputError);
}

TEST(TokenMaskTest, IndicesAndBounds) {
  const auto g = PatchGrid::make(64, 64, 16);
  const std::vector<std::size_t> idx{3, 1};
  TokenMask m(g, idx);
  EXPECT_EQ(m.count(), 2u);
  EXPECT_EQ(m.selected_indices(), (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(m.unselected_indices().size(), 14u);
  const std::vector<std::size_t> bad{16};
  EXPECT_THROW(TokenMask(g, bad), InputError);
}

TEST(RasterizeBoxesTest, Examples) {
  const auto g = PatchGrid::make(64, 64, 16);
  EXPECT_EQ(boxes_of(g, {{0, 0, 16, 16}}), (std::set<std::size_t>{0}));
  EXPECT_EQ(boxes_of(g, {{0, 0, 64, 64}}).size(), 16u);
  EXPECT_EQ(boxes_of(g, {{8, 8, 24, 24}}), (std::set<std::size_t>{0, 1, 4, 5}));
  EXPECT_TRUE(boxes_of(g, {{16, 16, 16, 40}}).empty());
  EXPECT_TRUE(boxes_of(g, {}).empty());
}

TEST(RasterizeBoxesTest, BoxesBeyondTheImageAreClipped) {
  const auto g = PatchGrid::make(64, 64, 16);
  EXPECT_EQ(boxes_of(g, {{60, 60, 200, 200}}), (std::set<std::size_t>{15}));
  EXPECT_TRUE(boxes_of(g, {{100, 100, 200, 200}}).empty());
}

TEST(RasterizeBoxesTest, MatchesLatticeOracle) {
  std::mt19937_64 rng(3);
  const auto g = PatchGrid::make(70, 50, 14);
  for (int trial = 0; trial < 100; ++trial) {
    const double x = double(rng() % 70), y = double(rng() % 50);
    const BBox b{x, y, x + double(rng() % 40), y + double(rng() % 40)};
    EXPECT_EQ(boxes_of(g, {b}), oracle::lattice_patch_cover(g, b)) << x << "," << y;
  }
}

TEST(RasterizeEdgesTest, Examples) {
  const auto g = PatchGrid::make(64, 64, 16);
  EXPECT_EQ(edge_of(g, {8, 8}, {56, 8}), (std::set<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(edge_of(g, {8, 8}, {8, 8}), (std::set<std::size_t>{0}));

  std::set<std::size_t> band;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (std::abs(r - c) <= 1) band.insert(g.index(r, c));
  const auto diag = edge_of(g, {0, 0}, {63, 63});
  EXPECT_EQ(diag, band);
  for (int k = 0; k < 4; ++k) EXPECT_TRUE(diag.count(g.index(k, k)));
}

TEST(RasterizeEdgesTest, RandomSegmentsAgreeWithDistanceAndSampling) {
  std::mt19937_64 rng(17);
  const auto g = PatchGrid::make(98, 84, 14);
  for (int trial = 0; trial < 300; ++trial) {
    const Point a{oracle::unit(rng) * 98, oracle::unit(rng) * 84};
    const Point b{oracle::unit(rng) * 98, oracle::unit(rng) * 84};
    const auto got = edge_of(g, a, b);
    const auto s = Segment::between(a, b);
    EXPECT_EQ(got, oracle::distance_segment_cover(g, s, 1e-9));
    for (std::size_t t : oracle::dense_segment_cover(g, s)) EXPECT_TRUE(got.count(t));
  }
}

TEST(UnionMasksTest, Identities) {
  const auto g = PatchGrid::make(64, 64, 16);
  const std::vector<std::size_t> ia{0, 5, 9}, ib{5, 15};
  const TokenMask a(g, ia), b(g, ib), none(g);
  EXPECT_EQ(union_masks(a, none), a);
  EXPECT_EQ(union_masks(a, a), a);
  EXPECT_EQ(union_masks(a, b), union_masks(b, a));
  EXPECT_EQ(union_masks(a, b).selected_indices(), (std::vector<std::size_t>{0, 5, 9, 15}));
  EXPECT_THROW(union_masks(a, TokenMask(PatchGrid::make(64, 64, 32))), InputError);
}

TEST(CompressionRatioTest, Fractions) {
  const auto g = PatchGrid::make(64, 64, 16);
  const std::vector<std::size_t> six{0, 1, 2, 3, 4, 5};
  const auto r = compression_ratio(TokenMask(g, six));
  EXPECT_DOUBLE_EQ(r.kept, 0.375);
  EXPECT_DOUBLE_EQ(r.removed, 0.625);
  EXPECT_EQ(compression_ratio(TokenMask(g)).removed, 1.0);
  TokenMask full(g);
  for (std::size_t t = 0; t < full.size(); ++t) full.set(t);
  EXPECT_EQ(compression_ratio(full).kept, 1.0);
  EXPECT_EQ(compression_ratio(full).removed, 0.0);
}

}  // namespace
}  // namespace uicompress
