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

#include "uicompress/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "uicompress/error.hpp"

namespace uicompress {

std::string_view to_string(ElementClass cls) noexcept {
  switch (cls) {
    case ElementClass::Text:
      return "text";
    case ElementClass::Image:
      return "image";
    case ElementClass::Component:
      return "component";
  }
  return "component";
}

ElementClass parse_element_class(std::string_view name) {
  if (name == "text") return ElementClass::Text;
  if (name == "image") return ElementClass::Image;
  if (name == "component") return ElementClass::Component;
  throw InputError("unknown element class '" + std::string(name) + "'");
}

std::string_view to_string(OverlapKind kind) noexcept {
  switch (kind) {
    case OverlapKind::Disjoint:
      return "disjoint";
    case OverlapKind::Contains:
      return "contains";
    case OverlapKind::ContainedBy:
      return "contained_by";
    case OverlapKind::Intersects:
      return "intersects";
  }
  return "disjoint";
}

bool BBox::valid() const noexcept {
  const bool finite = std::isfinite(x_min) && std::isfinite(y_min) &&
                      std::isfinite(x_max) && std::isfinite(y_max);
  return finite && x_min >= 0.0 && y_min >= 0.0 && x_min <= x_max && y_min <= y_max;
}

void validate(const BBox& box) {
  if (!box.valid()) {
    std::ostringstream os;
    os << "invalid bbox id " << box.id << ": [" << box.x_min << ", " << box.y_min
       << ", " << box.x_max << ", " << box.y_max << "]";
    throw InputError(os.str());
  }
}

Segment Segment::between(Point a, Point b) noexcept {
  return Segment{a, b, std::hypot(b.x - a.x, b.y - a.y)};
}

double intersection_area(const BBox& a, const BBox& b) noexcept {
  const double w = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double h = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

BBox enclosing(const BBox& a, const BBox& b) noexcept {
  BBox out = a;
  out.x_min = std::min(a.x_min, b.x_min);
  out.y_min = std::min(a.y_min, b.y_min);
  out.x_max = std::max(a.x_max, b.x_max);
  out.y_max = std::max(a.y_max, b.y_max);
  return out;
}

namespace {

bool within(const BBox& inner, const BBox& outer) noexcept {
  return inner.x_min >= outer.x_min && inner.x_max <= outer.x_max &&
         inner.y_min >= outer.y_min && inner.y_max <= outer.y_max;
}

double horizontal_gap(const BBox& a, const BBox& b) noexcept {
  return std::max({0.0, b.x_min - a.x_max, a.x_min - b.x_max});
}

double vertical_gap(const BBox& a, const BBox& b) noexcept {
  return std::max({0.0, b.y_min - a.y_max, a.y_min - b.y_max});
}

double vertical_overlap(const BBox& a, const BBox& b) noexcept {
  return std::max(0.0, std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min));
}

bool same_line(const BBox& a, const BBox& b, double merge_factor) noexcept {
  const double h = std::min(a.height(), b.height());
  return horizontal_gap(a, b) <= merge_factor * h &&
         vertical_overlap(a, b) >= kTextLineOverlap * h;
}

}  // namespace

OverlapKind classify_overlap(const BBox& a, const BBox& b) noexcept {
  if (within(b, a)) return OverlapKind::Contains;
  if (within(a, b)) return OverlapKind::ContainedBy;
  if (intersection_area(a, b) > 0.0) return OverlapKind::Intersects;
  return OverlapKind::Disjoint;
}

std::vector<BBox> resolve_overlaps(std::vector<BBox> boxes) {
  std::stable_sort(boxes.begin(), boxes.end(),
                   [](const BBox& l, const BBox& r) { return l.id < r.id; });

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      std::size_t j = i + 1;
      while (j < boxes.size()) {
        switch (classify_overlap(boxes[i], boxes[j])) {
          case OverlapKind::Disjoint:
            ++j;
            continue;
          case OverlapKind::Contains:
            boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(j));
            break;
          case OverlapKind::ContainedBy:
            boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(i));
            break;
          case OverlapKind::Intersects:
            boxes[i] = enclosing(boxes[i], boxes[j]);
            boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(j));
            break;
        }
        // boxes[i] grew or was replaced; rescan its partners.
        changed = true;
        j = i + 1;
        if (i >= boxes.size()) break;
      }
    }
  }
  return boxes;
}

std::vector<BBox> merge_text_fragments(std::vector<BBox> boxes, double merge_factor) {
  if (!(merge_factor > 0.0)) throw InputError("merge_factor must be positive");

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      if (boxes[i].cls != ElementClass::Text) continue;
      std::size_t j = i + 1;
      while (j < boxes.size()) {
        if (boxes[j].cls == ElementClass::Text && same_line(boxes[i], boxes[j], merge_factor)) {
          boxes[i] = enclosing(boxes[i], boxes[j]);
          boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          j = i + 1;
        } else {
          ++j;
        }
      }
    }
  }
  return boxes;
}

BoxDistance box_distance(const BBox& a, const BBox& b) noexcept {
  const double dx = horizontal_gap(a, b);
  const double dy = vertical_gap(a, b);

  // Near edges of each box along one axis; only meaningful when separated.
  const bool b_right = b.x_min > a.x_max;
  const bool b_below = b.y_min > a.y_max;
  const double ax = b_right ? a.x_max : a.x_min;
  const double bx = b_right ? b.x_min : b.x_max;
  const double ay = b_below ? a.y_max : a.y_min;
  const double by = b_below ? b.y_min : b.y_max;

  const double ox = 0.5 * (std::max(a.x_min, b.x_min) + std::min(a.x_max, b.x_max));
  const double oy = 0.5 * (std::max(a.y_min, b.y_min) + std::min(a.y_max, b.y_max));

  BoxDistance out;
  out.distance = std::hypot(dx, dy);
  if (dx > 0.0 && dy > 0.0) {
    out.witness = Segment::between({ax, ay}, {bx, by});
  } else if (dx > 0.0) {
    out.witness = Segment::between({ax, oy}, {bx, oy});
  } else if (dy > 0.0) {
    out.witness = Segment::between({ox, ay}, {ox, by});
  } else {
    out.witness = Segment::between({ox, oy}, {ox, oy});
  }
  return out;
}

}  // namespace uicompress
