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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uicompress/geometry.hpp"

namespace uicompress {

/// Weighted link between nodes i < j. The witness is the shortest segment
/// between the two boxes and is kept for rasterisation.
struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 0.0;
  Segment witness;
};

/// Complete graph over element boxes, weights = boundary distance.
struct ElementGraph {
  std::vector<BBox> nodes;
  std::vector<Edge> edges;
};

/// Minimum spanning tree of an ElementGraph.
struct ElementTree {
  std::vector<BBox> nodes;
  std::vector<Edge> edges;
  double total_weight = 0.0;
};

/// Union-find with path halving and union by size.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n);

  std::size_t find(std::size_t x) noexcept;
  /// Returns false when @p a and @p b were already in one set.
  bool unite(std::size_t a, std::size_t b) noexcept;
  [[nodiscard]] std::size_t components() const noexcept { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

/// Throws InputError("no elements") for an empty list.
ElementGraph build_graph(std::span<const BBox> boxes);

/// Kruskal over edges ordered by (weight, i, j). Tree edges are listed in
/// acceptance order. Throws InputError("graph not connected") when the edges
/// do not span every node.
ElementTree kruskal_mst(const ElementGraph& graph);

}  // namespace uicompress
