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

/// @file token_grid.hpp
/// @brief Mapping of element regions onto the vision encoder's patch grid.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uicompress/geometry.hpp"

namespace uicompress {

/// 336 px input at patch 14 gives the 24 x 24 = 576 token CLIP ViT-L/14 grid.
inline constexpr int kDefaultPatch = 14;

/// Uniform tiling of an image into square patches, one visual token each.
/// Token index of patch (row, col) is row * cols + col. Edge patches may be
/// narrower than `patch` when the image size is not a multiple of it.
struct PatchGrid {
  int image_w = 0;
  int image_h = 0;
  int patch = kDefaultPatch;
  int cols = 0;
  int rows = 0;

  /// Throws InputError unless width, height and patch are all >= 1.
  static PatchGrid make(int image_w, int image_h, int patch = kDefaultPatch);

  [[nodiscard]] std::size_t size() const noexcept {
    return static_cast<std::size_t>(cols) * static_cast<std::size_t>(rows);
  }
  [[nodiscard]] std::size_t index(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * cols + col;
  }
  /// Pixel rectangle covered by a token, clipped to the image.
  [[nodiscard]] BBox patch_rect(std::size_t token) const noexcept;

  /// Grids are interchangeable when their tiling matches.
  friend bool operator==(const PatchGrid& a, const PatchGrid& b) noexcept {
    return a.cols == b.cols && a.rows == b.rows && a.patch == b.patch;
  }
};

/// Selected / unselected partition of the tokens of one grid.
class TokenMask {
 public:
  TokenMask() = default;
  explicit TokenMask(const PatchGrid& grid);
  /// Throws InputError for an index outside the grid.
  TokenMask(const PatchGrid& grid, std::span<const std::size_t> selected);

  [[nodiscard]] const PatchGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] bool selected(std::size_t token) const { return bits_.at(token); }
  void set(std::size_t token, bool on = true) { bits_.at(token) = on; }

  [[nodiscard]] std::size_t count() const noexcept;
  /// Selected token indices in ascending order.
  [[nodiscard]] std::vector<std::size_t> selected_indices() const;
  [[nodiscard]] std::vector<std::size_t> unselected_indices() const;

  friend bool operator==(const TokenMask&, const TokenMask&) = default;

 private:
  PatchGrid grid_;
  std::vector<bool> bits_;
};

/// Selects every token whose patch overlaps some box with positive area.
/// Boxes are clipped to the image first.
TokenMask rasterize_boxes(const PatchGrid& grid, std::span<const BBox> boxes);

/// Supercover rasterisation: selects every token whose closed patch rectangle
/// the segment touches, including both neighbours at an exact corner crossing.
TokenMask rasterize_edges(const PatchGrid& grid, std::span<const Segment> segments);

/// Pointwise OR. Throws InputError when the grids differ.
TokenMask union_masks(const TokenMask& a, const TokenMask& b);

struct CompressionRatio {
  double kept = 0.0;     ///< selected / total
  double removed = 0.0;  ///< 1 - kept; reported as "compression ratio"
};

CompressionRatio compression_ratio(const TokenMask& mask) noexcept;

}  // namespace uicompress
