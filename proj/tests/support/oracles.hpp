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

// Brute-force reference implementations used by the unit and acceptance
// suites. None of these call into the library code paths they check.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "uicompress/geometry.hpp"
#include "uicompress/repetition_tracker.hpp"
#include "uicompress/token_grid.hpp"

namespace oracle {

// ---- spanning trees

struct WEdge {
  std::size_t i;
  std::size_t j;
  double w;
};

/// Enumerates every spanning tree of the complete graph given by the
/// symmetric weight matrix and returns the minimum total weight together with
/// the lexicographically smallest minimum tree (edges sorted by (w, i, j)).
struct MstBrute {
  double total = 0.0;
  std::vector<WEdge> edges;
  std::size_t trees = 0;  ///< number of spanning trees enumerated
};
MstBrute brute_force_mst(const std::vector<std::vector<double>>& w);

/// True when the edge list forms a spanning tree over n nodes (DFS check).
bool is_spanning_tree(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

// ---- geometry

/// Samples the boundary of @p a every @p step pixels and takes the exact
/// distance from each sample to the four edges of @p b. Returns 0 when the
/// closed regions share a point.
double sampled_box_distance(const uicompress::BBox& a, const uicompress::BBox& b, double step = 0.01);

double point_segment_distance(uicompress::Point p, uicompress::Point a, uicompress::Point b);

/// Tokens whose patch overlaps the box, decided by sampling a 0.25 px lattice.
std::set<std::size_t> lattice_patch_cover(const uicompress::PatchGrid& grid, const uicompress::BBox& box);

/// Tokens hit by points sampled along the segment every @p step pixels.
std::set<std::size_t> dense_segment_cover(const uicompress::PatchGrid& grid, const uicompress::Segment& s,
                                          double step = 0.1);

/// Tokens whose closed patch rectangle lies within @p tol of the segment.
std::set<std::size_t> distance_segment_cover(const uicompress::PatchGrid& grid,
                                             const uicompress::Segment& s, double tol = 1e-9);

// ---- repetition tracking

/// Smallest period >= min_unit whose unit ends the buffer at least
/// min_count times, with the maximal count; block comparisons only.
std::optional<std::pair<std::string, std::size_t>> brute_tail_repeat(const std::string& buffer,
                                                                     std::size_t min_unit,
                                                                     std::size_t min_count);

/// Recounts the frequency tables of a complete document in one pass,
/// including the end-of-stream flush of the last HTML unit.
uicompress::FreqTables batch_recount(const std::string& doc, const uicompress::TrackerConfig& cfg = {});

// ---- misc

/// T * (4 n d^2 + 2 n^2 d + 2 n d m) evaluated term by term in 128 bits.
unsigned __int128 flops_terms(std::uint64_t T, std::uint64_t n, std::uint64_t d, std::uint64_t m);

/// Portable uniform double in [0, 1) from a 64-bit engine.
inline double unit(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace oracle
