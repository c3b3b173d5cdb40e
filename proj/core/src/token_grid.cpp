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

#include <algorithm>
#include <cmath>
#include <string>

#include "uicompress/error.hpp"

namespace uicompress {

PatchGrid PatchGrid::make(int image_w, int image_h, int patch) {
  if (image_w < 1 || image_h < 1) throw InputError("image dimensions must be >= 1");
  if (patch < 1) throw InputError("patch size must be >= 1");
  PatchGrid g;
  g.image_w = image_w;
  g.image_h = image_h;
  g.patch = patch;
  g.cols = (image_w + patch - 1) / patch;
  g.rows = (image_h + patch - 1) / patch;
  return g;
}

BBox PatchGrid::patch_rect(std::size_t token) const noexcept {
  const int r = static_cast<int>(token / static_cast<std::size_t>(cols));
  const int c = static_cast<int>(token % static_cast<std::size_t>(cols));
  BBox b;
  b.x_min = double(c) * patch;
  b.y_min = double(r) * patch;
  b.x_max = std::min(double(c + 1) * patch, double(image_w));
  b.y_max = std::min(double(r + 1) * patch, double(image_h));
  b.id = static_cast<std::int64_t>(token);
  return b;
}

TokenMask::TokenMask(const PatchGrid& grid) : grid_(grid), bits_(grid.size(), false) {}

TokenMask::TokenMask(const PatchGrid& grid, std::span<const std::size_t> selected)
    : TokenMask(grid) {
  for (std::size_t t : selected) {
    if (t >= bits_.size()) {
      throw InputError("token index " + std::to_string(t) + " outside a grid of " +
                       std::to_string(bits_.size()) + " tokens");
    }
    bits_[t] = true;
  }
}

std::size_t TokenMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<std::size_t> TokenMask::selected_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

std::vector<std::size_t> TokenMask::unselected_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (!bits_[i]) out.push_back(i);
  return out;
}

namespace {

// Candidate patch range (inclusive) for the closed interval [lo, hi]; one
// extra patch on the low side so that touching boundaries are examined.
std::pair<int, int> closed_span(double lo, double hi, int patch, int count) {
  const int first = std::clamp(static_cast<int>(std::floor(lo / patch)) - 1, 0, count - 1);
  const int last = std::clamp(static_cast<int>(std::floor(hi / patch)), 0, count - 1);
  return {first, last};
}

// Liang-Barsky against a closed rectangle.
bool segment_touches(const Segment& s, const BBox& r) noexcept {
  double t0 = 0.0;
  double t1 = 1.0;
  const double dx = s.b.x - s.a.x;
  const double dy = s.b.y - s.a.y;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {s.a.x - r.x_min, r.x_max - s.a.x, s.a.y - r.y_min, r.y_max - s.a.y};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) return false;
      continue;
    }
    const double t = q[k] / p[k];
    if (p[k] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return false;
  }
  return true;
}

double clampd(double v, double hi) { return std::clamp(v, 0.0, hi); }

}  // namespace

TokenMask rasterize_boxes(const PatchGrid& grid, std::span<const BBox> boxes) {
  TokenMask mask(grid);
  const double w = grid.image_w;
  const double h = grid.image_h;
  for (const BBox& raw : boxes) {
    BBox b = raw;
    b.x_min = clampd(b.x_min, w);
    b.x_max = clampd(b.x_max, w);
    b.y_min = clampd(b.y_min, h);
    b.y_max = clampd(b.y_max, h);
    if (b.area() <= 0.0) continue;

    const auto [c0, c1] = closed_span(b.x_min, b.x_max, grid.patch, grid.cols);
    const auto [r0, r1] = closed_span(b.y_min, b.y_max, grid.patch, grid.rows);
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        const std::size_t t = grid.index(r, c);
        if (intersection_area(grid.patch_rect(t), b) > 0.0) mask.set(t);
      }
    }
  }
  return mask;
}

TokenMask rasterize_edges(const PatchGrid& grid, std::span<const Segment> segments) {
  TokenMask mask(grid);
  const double w = grid.image_w;
  const double h = grid.image_h;
  for (const Segment& raw : segments) {
    const Segment s = Segment::between({clampd(raw.a.x, w), clampd(raw.a.y, h)},
                                       {clampd(raw.b.x, w), clampd(raw.b.y, h)});
    const auto [c0, c1] =
        closed_span(std::min(s.a.x, s.b.x), std::max(s.a.x, s.b.x), grid.patch, grid.cols);
    const auto [r0, r1] =
        closed_span(std::min(s.a.y, s.b.y), std::max(s.a.y, s.b.y), grid.patch, grid.rows);
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        const std::size_t t = grid.index(r, c);
        if (segment_touches(s, grid.patch_rect(t))) mask.set(t);
      }
    }
  }
  return mask;
}

TokenMask union_masks(const TokenMask& a, const TokenMask& b) {
  if (!(a.grid() == b.grid())) throw InputError("cannot combine masks over different grids");
  TokenMask out = a;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.selected(i)) out.set(i);
  return out;
}

CompressionRatio compression_ratio(const TokenMask& mask) noexcept {
  CompressionRatio r;
  if (mask.size() == 0) {
    r.removed = 1.0;
    return r;
  }
  r.kept = static_cast<double>(mask.count()) / static_cast<double>(mask.size());
  r.removed = 1.0 - r.kept;
  return r;
}

}  // namespace uicompress
