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

#include "uicompress/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "uicompress/error.hpp"
#include "uicompress/io.hpp"

namespace uicompress {

void CompressConfig::validate() const {
  if (patch < 1) throw InputError("patch size must be >= 1");
  if (!(merge_factor > 0.0)) throw InputError("merge factor must be positive");
  if (!(refine_ratio >= 0.0 && refine_ratio <= 1.0)) throw InputError("refine ratio must lie in [0, 1]");
}

CompressResult compress(const std::vector<BBox>& elements, const PatchGrid& grid,
                        const std::optional<std::vector<double>>& scores,
                        const CompressConfig& config) {
  config.validate();
  if (elements.empty()) throw InputError("no elements");
  for (const BBox& b : elements) validate(b);

  CompressResult out;
  out.elements = resolve_overlaps(merge_text_fragments(elements, config.merge_factor));
  out.tree = kruskal_mst(build_graph(out.elements));

  out.layout_mask = rasterize_boxes(grid, out.elements);
  if (config.include_edges) {
    std::vector<Segment> links;
    links.reserve(out.tree.edges.size());
    for (const Edge& e : out.tree.edges) links.push_back(e.witness);
    out.layout_mask = union_masks(out.layout_mask, rasterize_edges(grid, links));
  }

  if (scores) {
    out.refinement = refine_detailed(out.layout_mask, *scores, config.refine_ratio, config.refine_mode);
    out.mask = out.refinement->mask;
  } else {
    out.mask = out.layout_mask;
  }
  out.ratio = compression_ratio(out.mask);
  return out;
}

std::vector<double> visual_scores(const AttentionInput& attention, const PatchGrid& grid,
                                  std::size_t cls_index) {
  const SquareMatrix avg = average_heads(attention);
  if (avg.n != grid.size() + 1) {
    throw InputError("attention covers " + std::to_string(avg.n) + " tokens; expected CLS + " +
                     std::to_string(grid.size()) + " grid tokens");
  }
  TokenRange visual;
  if (cls_index == 0) {
    visual = {1, avg.n};
  } else if (cls_index == avg.n - 1) {
    visual = {0, avg.n - 1};
  } else {
    throw InputError("CLS token must be the first or last attention token");
  }
  return cls_importance(avg, cls_index, visual).scores;
}

Manifest read_manifest(const std::filesystem::path& path) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw InputError("malformed manifest: " + std::string(e.what()));
  }
  Manifest m;
  m.root = path.parent_path();
  try {
    for (const json& p : doc.at("pages")) {
      PageSpec page;
      page.name = p.at("name").get<std::string>();
      page.width = p.at("width").get<int>();
      page.height = p.at("height").get<int>();
      page.elements = p.at("elements").get<std::string>();
      if (p.contains("scores")) page.scores = p.at("scores").get<std::string>();
      if (p.contains("attention")) page.attention = p.at("attention").get<std::string>();
      if (p.contains("reference_mask")) page.reference_mask = p.at("reference_mask").get<std::string>();
      m.pages.push_back(std::move(page));
    }
  } catch (const json::exception& e) {
    throw InputError("manifest: " + std::string(e.what()));
  }
  return m;
}

namespace {

CompressResult compress_page(const Manifest& m, const PageSpec& page, const CompressConfig& config) {
  const PatchGrid grid = PatchGrid::make(page.width, page.height, config.patch);
  const auto elements = parse_elements(read_text_file(m.root / page.elements));
  std::optional<std::vector<double>> scores;
  if (page.scores) {
    scores = parse_scores(read_text_file(m.root / *page.scores));
  } else if (page.attention) {
    scores = visual_scores(read_attention(m.root / *page.attention), grid, config.cls_index);
  }
  return compress(elements, grid, scores, config);
}

}  // namespace

std::vector<PageResult> compress_manifest(const Manifest& manifest, const CompressConfig& config,
                                          std::size_t jobs) {
  const std::size_t n = manifest.pages.size();
  std::vector<PageResult> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = PageResult{manifest.pages[i].name,
                                compress_page(manifest, manifest.pages[i], config)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

namespace {

void plot(GrayImage& img, double x, double y) {
  const int px = std::clamp(static_cast<int>(std::floor(x)), 0, img.width - 1);
  const int py = std::clamp(static_cast<int>(std::floor(y)), 0, img.height - 1);
  img.at(px, py) = kVizOverlay;
}

void draw_line(GrayImage& img, Point a, Point b) {
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  const int steps = std::max(1, static_cast<int>(std::ceil(len * 2.0)));
  for (int i = 0; i <= steps; ++i) {
    const double t = double(i) / steps;
    plot(img, a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
  }
}

}  // namespace

GrayImage render_mask(const TokenMask& mask, const VizOverlay& overlay) {
  const PatchGrid& g = mask.grid();
  GrayImage img(g.cols * g.patch, g.rows * g.patch, 0);
  for (std::size_t t = 0; t < mask.size(); ++t) {
    if (!mask.selected(t)) continue;
    const int r = static_cast<int>(t / static_cast<std::size_t>(g.cols));
    const int c = static_cast<int>(t % static_cast<std::size_t>(g.cols));
    for (int y = r * g.patch; y < (r + 1) * g.patch; ++y)
      for (int x = c * g.patch; x < (c + 1) * g.patch; ++x) img.at(x, y) = kVizSelected;
  }
  for (const BBox& b : overlay.boxes) {
    draw_line(img, {b.x_min, b.y_min}, {b.x_max, b.y_min});
    draw_line(img, {b.x_max, b.y_min}, {b.x_max, b.y_max});
    draw_line(img, {b.x_max, b.y_max}, {b.x_min, b.y_max});
    draw_line(img, {b.x_min, b.y_max}, {b.x_min, b.y_min});
  }
  for (const Segment& s : overlay.edges) draw_line(img, s.a, s.b);
  return img;
}

}  // namespace uicompress
