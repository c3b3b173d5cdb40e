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

#include <vector>

#include "uicompress/geometry.hpp"
#include "uicompress/raster.hpp"

namespace uicompress {

/// Fallback element detector for when no precomputed boxes are available.
struct DetectOptions {
  /// Fraction of the strongest gradient a pixel needs to count as an edge.
  double gradient_threshold = 0.1;
  /// Components whose bounding box covers fewer pixels are dropped.
  double min_area = 25.0;
};

/// Gradient magnitude threshold, 8-connected components, one Component box
/// per surviving component (pixel-edge coordinates, ids in scan order).
/// Throws InputError("empty input image") for a zero-sized image.
std::vector<BBox> naive_detect(const GrayImage& image, const DetectOptions& options = {});

}  // namespace uicompress
