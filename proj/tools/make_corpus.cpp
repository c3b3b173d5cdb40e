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

//
// Writes the synthetic page corpus: element boxes laid out like typical
// landing pages, CLS importance scores per visual token, reference masks
// produced with default settings, and a manifest tying them together.
// Output is a pure function of --seed.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uicompress/io.hpp"
#include "uicompress/pipeline.hpp"

namespace {

using uicompress::BBox;
using uicompress::ElementClass;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double unit() { return double(engine_() >> 11) * 0x1.0p-53; }
  int between(int lo, int hi) { return lo + int(engine_() % std::uint64_t(hi - lo + 1)); }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

class PageBuilder {
 public:
  PageBuilder(Rng& rng, int width) : rng_(rng), width_(width) {}

  int y = 0;

  void add(double x0, double y0, double x1, double y1, ElementClass cls) {
    boxes_.push_back(BBox{x0, y0, std::min<double>(x1, width_), y1, cls, next_id_++});
  }

  /// A line of words from x0 with roughly the given width; words are
  /// separate text fragments.
  void text_line(int x0, int y0, int width, int height) {
    int x = x0;
    const int end = x0 + width;
    while (x < end - 12) {
      const int w = std::min(end - x, rng_.between(height, height * 4));
      add(x, y0, x + w, y0 + height, ElementClass::Text);
      x += w + rng_.between(height / 5, height / 3);
    }
  }

  void navbar() {
    const int h = rng_.between(48, 64);
    add(24, y + 12, 24 + rng_.between(70, 120), y + h - 12, ElementClass::Image);
    int x = width_ - 24;
    for (int k = rng_.between(3, 5); k > 0; --k) {
      const int w = rng_.between(40, 72);
      x -= w;
      add(x, y + h / 2 - 7, x + w, y + h / 2 + 7, ElementClass::Text);
      x -= rng_.between(20, 32);
    }
    y += h;
  }

  void hero() {
    y += rng_.between(40, 72);
    const bool side_image = rng_.chance(0.5);
    const int text_w = side_image ? width_ / 2 - 48 : width_ - 160;
    const int x0 = side_image ? 32 : 80;
    const int top = y;
    for (int k = rng_.between(1, 2); k > 0; --k) {
      text_line(x0, y, rng_.between(text_w * 2 / 3, text_w), 28);
      y += 38;
    }
    y += 8;
    for (int k = rng_.between(1, 2); k > 0; --k) {
      text_line(x0, y, rng_.between(text_w / 2, text_w), 16);
      y += 24;
    }
    y += 16;
    add(x0, y, x0 + rng_.between(110, 160), y + 40, ElementClass::Component);
    y += 40;
    if (side_image) {
      add(width_ / 2 + 16, top, width_ - 32, std::max(y, top + 180), ElementClass::Image);
      y = std::max(y, top + 180);
    }
  }

  void card_grid() {
    y += rng_.between(56, 96);
    text_line(width_ / 2 - 120, y, 240, 24);
    y += 24 + rng_.between(28, 40);
    const int cols = rng_.between(2, 3);
    const int gutter = 24;
    const int card_w = (width_ - 64 - gutter * (cols - 1)) / cols;
    const int rows = rng_.between(1, 2);
    for (int r = 0; r < rows; ++r) {
      const int img_h = rng_.between(80, 120);
      int bottom = y;
      for (int c = 0; c < cols; ++c) {
        const int x0 = 32 + c * (card_w + gutter);
        int cy = y;
        if (rng_.chance(0.85)) {
          add(x0, cy, x0 + card_w, cy + img_h, ElementClass::Image);
          cy += img_h + 12;
        }
        text_line(x0, cy, rng_.between(card_w / 2, card_w - 8), 18);
        cy += 28;
        for (int k = rng_.between(1, 3); k > 0; --k) {
          text_line(x0, cy, rng_.between(card_w * 2 / 3, card_w), 14);
          cy += 22;
        }
        bottom = std::max(bottom, cy);
      }
      y = bottom + rng_.between(32, 48);
    }
  }

  void feature_row() {
    y += rng_.between(56, 96);
    const bool image_left = rng_.chance(0.5);
    const int half = width_ / 2;
    const int text_x = image_left ? half + 16 : 32;
    const int img_x = image_left ? 32 : half + 16;
    const int top = y;
    text_line(text_x, y, rng_.between(160, half - 64), 22);
    y += 36;
    for (int k = rng_.between(2, 5); k > 0; --k) {
      text_line(text_x, y, rng_.between(half / 2, half - 56), 14);
      y += 22;
    }
    const int img_h = rng_.between(120, 200);
    add(img_x, top, img_x + half - 48, top + img_h, ElementClass::Image);
    y = std::max(y, top + img_h);
  }

  void footer() {
    y += rng_.between(56, 88);
    const int cols = rng_.between(2, 4);
    const int col_w = (width_ - 64) / cols;
    int bottom = y;
    for (int c = 0; c < cols; ++c) {
      int cy = y;
      const int x0 = 32 + c * col_w;
      text_line(x0, cy, rng_.between(60, col_w / 2 + 20), 16);
      cy += 26;
      for (int k = rng_.between(2, 4); k > 0; --k) {
        text_line(x0, cy, rng_.between(50, col_w / 2), 12);
        cy += 20;
      }
      bottom = std::max(bottom, cy);
    }
    y = bottom + rng_.between(32, 48);
  }

  std::vector<BBox> take() { return std::move(boxes_); }

 private:
  Rng& rng_;
  int width_;
  std::int64_t next_id_ = 0;
  std::vector<BBox> boxes_;
};

struct Page {
  int width = 0;
  int height = 0;
  std::vector<BBox> boxes;
};

Page make_page(Rng& rng) {
  Page page;
  page.width = 672;
  PageBuilder b(rng, page.width);
  b.navbar();
  b.hero();
  for (int k = rng.between(1, 3); k > 0; --k) {
    if (rng.chance(0.5)) {
      b.card_grid();
    } else {
      b.feature_row();
    }
  }
  b.footer();
  page.height = b.y;
  page.boxes = b.take();
  return page;
}

/// Softmax-like CLS attention: a noisy floor, a few dominant background
/// tokens, and mild emphasis on content patches.
std::vector<double> make_scores(Rng& rng, const uicompress::PatchGrid& grid,
                                const std::vector<BBox>& boxes) {
  const auto content = uicompress::rasterize_boxes(grid, boxes);
  std::vector<double> s(grid.size());
  double total = 0.0;
  for (std::size_t t = 0; t < s.size(); ++t) {
    double logit = rng.unit() * 2.0 + (content.selected(t) ? 0.5 : 0.0);
    if (rng.chance(0.01)) logit += 4.0;
    s[t] = std::exp(logit);
    total += s[t];
  }
  for (double& v : s) v /= total;
  return s;
}

std::string format_scores(const std::vector<double>& scores) {
  std::ostringstream out;
  out << std::setprecision(9);
  for (double v : scores) out << v << '\n';
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic page corpus"};
  std::filesystem::path out_dir = "data/corpus";
  int pages = 20;
  std::uint64_t seed = 20260101;
  app.add_option("-o,--out", out_dir, "Output directory");
  app.add_option("-n,--pages", pages, "Number of pages")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Generator seed");
  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out_dir);
    Rng rng(seed);
    nlohmann::json manifest{{"pages", nlohmann::json::array()}};
    uicompress::CompressConfig config;
    double removed_sum = 0.0;

    for (int k = 0; k < pages; ++k) {
      std::ostringstream name;
      name << "page_" << std::setw(2) << std::setfill('0') << k;
      const Page page = make_page(rng);
      const auto grid = uicompress::PatchGrid::make(page.width, page.height, config.patch);
      const auto scores = make_scores(rng, grid, page.boxes);
      const auto result = uicompress::compress(page.boxes, grid, scores, config);
      removed_sum += result.ratio.removed;

      const std::string stem = name.str();
      uicompress::write_text_file(out_dir / (stem + ".elements.json"),
                                  uicompress::format_elements(page.boxes) + "\n");
      uicompress::write_text_file(out_dir / (stem + ".scores.txt"), format_scores(scores));
      uicompress::write_text_file(out_dir / (stem + ".mask.json"), uicompress::format_mask(result.mask));
      manifest["pages"].push_back({{"name", stem},
                                   {"width", page.width},
                                   {"height", page.height},
                                   {"elements", stem + ".elements.json"},
                                   {"scores", stem + ".scores.txt"},
                                   {"reference_mask", stem + ".mask.json"}});
      std::cout << stem << '\t' << page.width << 'x' << page.height << '\t' << page.boxes.size()
                << " elements\tremoved " << std::fixed << std::setprecision(4)
                << result.ratio.removed << '\n';
      std::cout.unsetf(std::ios::fixed);
    }
    uicompress::write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    std::cout << "mean removed " << std::fixed << std::setprecision(4) << removed_sum / pages << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
