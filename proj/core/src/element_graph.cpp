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

#include "uicompress/element_graph.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <utility>

#include "uicompress/error.hpp"

namespace uicompress {

DisjointSet::DisjointSet(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSet::find(std::size_t x) noexcept {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSet::unite(std::size_t a, std::size_t b) noexcept {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  --components_;
  return true;
}

ElementGraph build_graph(std::span<const BBox> boxes) {
  if (boxes.empty()) throw InputError("no elements");

  ElementGraph g;
  g.nodes.assign(boxes.begin(), boxes.end());
  const std::size_t n = boxes.size();
  g.edges.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const BoxDistance d = box_distance(boxes[i], boxes[j]);
      g.edges.push_back(Edge{i, j, d.distance, d.witness});
    }
  }
  return g;
}

ElementTree kruskal_mst(const ElementGraph& graph) {
  const std::size_t n = graph.nodes.size();
  if (n == 0) throw InputError("no elements");

  std::vector<std::size_t> order(graph.edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    const Edge& a = graph.edges[l];
    const Edge& b = graph.edges[r];
    return std::tie(a.weight, a.i, a.j) < std::tie(b.weight, b.i, b.j);
  });

  ElementTree tree;
  tree.nodes = graph.nodes;
  tree.edges.reserve(n - 1);
  DisjointSet sets(n);
  for (std::size_t k : order) {
    const Edge& e = graph.edges[k];
    if (e.i >= n || e.j >= n) throw InputError("edge references a missing node");
    if (sets.unite(e.i, e.j)) {
      tree.edges.push_back(e);
      tree.total_weight += e.weight;
      if (tree.edges.size() == n - 1) break;
    }
  }
  if (sets.components() != 1) throw InputError("graph not connected");
  return tree;
}

}  // namespace uicompress
