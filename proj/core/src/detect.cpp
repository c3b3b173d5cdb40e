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

#include "uicompress/detect.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "uicompress/error.hpp"

namespace uicompress {

namespace {

// Central differences, clamped at the image border.
std::vector<double> gradient_magnitude(const GrayImage& img) {
  const int w = img.width;
  const int h = img.height;
  std::vector<double> mag(img.pixels.size(), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = double(img.at(std::min(x + 1, w - 1), y)) - img.at(std::max(x - 1, 0), y);
      const double gy = double(img.at(x, std::min(y + 1, h - 1))) - img.at(x, std::max(y - 1, 0));
      mag[static_cast<std::size_t>(y) * w + x] = std::hypot(gx, gy);
    }
  }
  return mag;
}

}  // namespace

std::vector<BBox> naive_detect(const GrayImage& image, const DetectOptions& options) {
  if (image.empty()) throw InputError("empty input image");

  const int w = image.width;
  const int h = image.height;
  const auto mag = gradient_magnitude(image);
  const double peak = *std::max_element(mag.begin(), mag.end());
  if (peak <= 0.0) return {};
  const double cut = options.gradient_threshold * peak;

  std::vector<char> edge(mag.size());
  for (std::size_t i = 0; i < mag.size(); ++i) edge[i] = mag[i] >= cut && mag[i] > 0.0;

  std::vector<char> seen(mag.size(), 0);
  std::vector<std::pair<int, int>> stack;
  std::vector<BBox> boxes;
  std::int64_t next_id = 0;

  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      const std::size_t start = static_cast<std::size_t>(y0) * w + x0;
      if (!edge[start] || seen[start]) continue;

      int min_x = x0, max_x = x0, min_y = y0, max_y = y0;
      seen[start] = 1;
      stack.assign(1, {x0, y0});
      while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = x + dx;
            const int ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t k = static_cast<std::size_t>(ny) * w + nx;
            if (edge[k] && !seen[k]) {
              seen[k] = 1;
              stack.emplace_back(nx, ny);
            }
          }
        }
      }

      BBox box{double(min_x), double(min_y), double(max_x + 1), double(max_y + 1),
               ElementClass::Component, 0};
      if (box.area() >= options.min_area) {
        box.id = next_id++;
        boxes.push_back(box);
      }
    }
  }
  return boxes;
}

}  // namespace uicompress
