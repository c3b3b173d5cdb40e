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

/// @file pipeline.hpp
/// @brief End-to-end visual token selection for one page or a corpus.
///
/// Text fragments are merged, overlaps resolved, the element graph reduced to
/// its minimum spanning tree, and the selection formed by the patches under
/// the elements plus those crossed by the tree links. When importance scores
/// are supplied the selection is then refined.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uicompress/attention_refine.hpp"
#include "uicompress/element_graph.hpp"
#include "uicompress/geometry.hpp"
#include "uicompress/metrics.hpp"
#include "uicompress/raster.hpp"
#include "uicompress/token_grid.hpp"

namespace uicompress {

struct CompressConfig {
  int patch = kDefaultPatch;
  double merge_factor = kDefaultMergeFactor;
  double refine_ratio = kDefaultRefineRatio;
  RefineMode refine_mode = RefineMode::Balanced;
  bool include_edges = true;
  std::size_t cls_index = kDefaultClsIndex;

  void validate() const;
};

struct CompressResult {
  std::vector<BBox> elements;  ///< after merging and overlap resolution
  ElementTree tree;
  TokenMask layout_mask;       ///< before refinement
  TokenMask mask;              ///< final selection
  std::optional<RefineOutcome> refinement;
  CompressionRatio ratio;
};

/// Runs layout selection and, when @p scores is given (one per grid token),
/// refinement. Throws InputError("no elements") for an empty element list.
CompressResult compress(const std::vector<BBox>& elements, const PatchGrid& grid,
                        const std::optional<std::vector<double>>& scores,
                        const CompressConfig& config);

/// CLS importance for every grid token. The attention must cover one CLS
/// token plus the grid tokens, with the CLS token first or last.
std::vector<double> visual_scores(const AttentionInput& attention, const PatchGrid& grid,
                                  std::size_t cls_index);

/// One page of a corpus manifest; paths are relative to the manifest.
struct PageSpec {
  std::string name;
  int width = 0;
  int height = 0;
  std::filesystem::path elements;
  std::optional<std::filesystem::path> scores;
  std::optional<std::filesystem::path> attention;
  std::optional<std::filesystem::path> reference_mask;
};

struct Manifest {
  std::filesystem::path root;
  std::vector<PageSpec> pages;
};

/// {"pages": [{"name", "width", "height", "elements", "scores"?,
/// "attention"?, "reference_mask"?}]}
Manifest read_manifest(const std::filesystem::path& path);

struct PageResult {
  std::string name;
  CompressResult result;
};

/// Compresses every page, spreading pages over @p jobs threads. Results keep
/// manifest order.
std::vector<PageResult> compress_manifest(const Manifest& manifest, const CompressConfig& config,
                                          std::size_t jobs = 1);

struct VizOverlay {
  std::vector<BBox> boxes;
  std::vector<Segment> edges;
};

inline constexpr std::uint8_t kVizSelected = 255;
inline constexpr std::uint8_t kVizOverlay = 128;

/// Selected patches white, the rest black, overlay outlines and links mid-gray.
GrayImage render_mask(const TokenMask& mask, const VizOverlay& overlay = {});

}  // namespace uicompress
