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

/// @file geometry.hpp
/// @brief Bounding-box primitives for UI element regions.
///
/// Coordinates are pixels with the origin at the top-left corner of the
/// screenshot; x grows to the right and y grows downwards. A box covers the
/// closed rectangle [x_min, x_max] x [y_min, y_max].

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace uicompress {

enum class ElementClass { Text, Image, Component };

std::string_view to_string(ElementClass cls) noexcept;
/// Parses "text", "image" or "component". Throws InputError otherwise.
ElementClass parse_element_class(std::string_view name);

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct BBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;
  ElementClass cls = ElementClass::Component;
  std::int64_t id = 0;

  [[nodiscard]] constexpr double width() const noexcept { return x_max - x_min; }
  [[nodiscard]] constexpr double height() const noexcept { return y_max - y_min; }
  [[nodiscard]] constexpr double area() const noexcept { return width() * height(); }

  /// Finite, non-negative and ordered coordinates.
  [[nodiscard]] bool valid() const noexcept;

  /// True when the rectangle covers @p p (boundary included).
  [[nodiscard]] constexpr bool contains(Point p) const noexcept {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Throws InputError naming the box when it is not valid().
void validate(const BBox& box);

/// Straight link between two points; length is the Euclidean distance.
struct Segment {
  Point a;
  Point b;
  double length = 0.0;

  static Segment between(Point a, Point b) noexcept;
};

enum class OverlapKind { Disjoint, Contains, ContainedBy, Intersects };

std::string_view to_string(OverlapKind kind) noexcept;

/// Area of the common part of two boxes; 0 when they only touch.
double intersection_area(const BBox& a, const BBox& b) noexcept;

/// Smallest box covering both inputs. Identity and class are taken from @p a.
BBox enclosing(const BBox& a, const BBox& b) noexcept;

/// Contains when @p b lies within @p a (shared edges allowed). Identical boxes
/// report Contains so the first argument wins.
OverlapKind classify_overlap(const BBox& a, const BBox& b) noexcept;

/// Removes every overlap of positive area. Nested boxes collapse to the
/// container; partially overlapping boxes are replaced by their enclosing
/// rectangle. Repeats until no pair overlaps. The result is ordered by id and
/// keeps the id of the surviving (or lower-id) box.
std::vector<BBox> resolve_overlaps(std::vector<BBox> boxes);

inline constexpr double kDefaultMergeFactor = 0.5;
inline constexpr double kTextLineOverlap = 0.5;

/// Joins text fragments that belong to one line: horizontal gap at most
/// merge_factor * min height and vertical overlap at least half the smaller
/// height. Non-text boxes pass through untouched.
std::vector<BBox> merge_text_fragments(std::vector<BBox> boxes,
                                       double merge_factor = kDefaultMergeFactor);

struct BoxDistance {
  double distance = 0.0;
  Segment witness;
};

/// Minimum distance between the two box boundaries, or 0 when the regions
/// touch or overlap, together with a segment realising it.
///
/// Axis-separated pairs yield a horizontal (vertical) witness anchored at the
/// midpoint of the shared y (x) interval; diagonal pairs connect the nearest
/// corners. Touching or overlapping pairs yield a zero-length witness at the
/// centre of the common region.
BoxDistance box_distance(const BBox& a, const BBox& b) noexcept;

}  // namespace uicompress
