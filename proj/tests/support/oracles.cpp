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

#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <tuple>

namespace oracle {

using uicompress::BBox;
using uicompress::FreqTables;
using uicompress::PatchGrid;
using uicompress::Point;
using uicompress::Segment;
using uicompress::TrackerConfig;

// ---------------------------------------------------------------- trees

bool is_spanning_tree(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (n == 0 || edges.size() != n - 1) return false;
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [i, j] : edges) {
    if (i >= n || j >= n || i == j) return false;
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n;
}

MstBrute brute_force_mst(const std::vector<std::vector<double>>& w) {
  const std::size_t n = w.size();
  MstBrute best;
  best.total = std::numeric_limits<double>::infinity();
  if (n <= 1) {
    best.total = 0.0;
    best.trees = 1;
    return best;
  }

  std::vector<WEdge> all;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) all.push_back({i, j, w[i][j]});

  const auto key = [](const WEdge& e) { return std::tuple(e.w, e.i, e.j); };
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> choose = [&](std::size_t from) {
    if (pick.size() == n - 1) {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      double total = 0.0;
      for (std::size_t k : pick) {
        pairs.emplace_back(all[k].i, all[k].j);
        total += all[k].w;
      }
      if (!is_spanning_tree(n, pairs)) return;
      ++best.trees;
      std::vector<WEdge> edges;
      for (std::size_t k : pick) edges.push_back(all[k]);
      std::sort(edges.begin(), edges.end(),
                [&](const WEdge& a, const WEdge& b) { return key(a) < key(b); });
      const auto lex_less = [&] {
        for (std::size_t k = 0; k < edges.size(); ++k) {
          if (key(edges[k]) != key(best.edges[k])) return key(edges[k]) < key(best.edges[k]);
        }
        return false;
      };
      if (total < best.total || (total == best.total && lex_less())) {
        best.total = total;
        best.edges = std::move(edges);
      }
      return;
    }
    for (std::size_t k = from; k < all.size(); ++k) {
      if (all.size() - k < (n - 1) - pick.size()) break;
      pick.push_back(k);
      choose(k + 1);
      pick.pop_back();
    }
  };
  choose(0);
  return best;
}

// ------------------------------------------------------------- geometry

double point_segment_distance(Point p, Point a, Point b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / len2, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

namespace {

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_cross(Point p1, Point p2, Point q1, Point q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

double segment_segment_distance(Point p1, Point p2, Point q1, Point q2) {
  if (segments_cross(p1, p2, q1, q2)) return 0.0;
  return std::min({point_segment_distance(p1, q1, q2), point_segment_distance(p2, q1, q2),
                   point_segment_distance(q1, p1, p2), point_segment_distance(q2, p1, p2)});
}

std::array<std::pair<Point, Point>, 4> sides(double x0, double y0, double x1, double y1) {
  const Point a{x0, y0}, b{x1, y0}, c{x1, y1}, d{x0, y1};
  return {{{a, b}, {b, c}, {c, d}, {d, a}}};
}

bool closed_contains(double x0, double y0, double x1, double y1, Point p) {
  return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1;
}

double segment_rect_distance(Point a, Point b, double x0, double y0, double x1, double y1) {
  if (closed_contains(x0, y0, x1, y1, a) || closed_contains(x0, y0, x1, y1, b)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (auto [p, q] : sides(x0, y0, x1, y1)) best = std::min(best, segment_segment_distance(a, b, p, q));
  return best;
}

}  // namespace

double sampled_box_distance(const BBox& a, const BBox& b, double step) {
  const bool share_x = a.x_min <= b.x_max && b.x_min <= a.x_max;
  const bool share_y = a.y_min <= b.y_max && b.y_min <= a.y_max;
  if (share_x && share_y) return 0.0;

  const auto b_sides = sides(b.x_min, b.y_min, b.x_max, b.y_max);
  double best = std::numeric_limits<double>::infinity();
  const auto probe = [&](Point p) {
    for (auto [s, e] : b_sides) best = std::min(best, point_segment_distance(p, s, e));
  };
  for (auto [s, e] : sides(a.x_min, a.y_min, a.x_max, a.y_max)) {
    const double len = std::hypot(e.x - s.x, e.y - s.y);
    const auto steps = static_cast<long>(std::ceil(len / step));
    for (long k = 0; k <= steps; ++k) {
      const double t = steps == 0 ? 0.0 : double(k) / double(steps);
      probe(Point{s.x + t * (e.x - s.x), s.y + t * (e.y - s.y)});
    }
  }
  return best;
}

namespace {

double patch_x1(const PatchGrid& g, int c) { return std::min<double>((c + 1) * g.patch, g.image_w); }
double patch_y1(const PatchGrid& g, int r) { return std::min<double>((r + 1) * g.patch, g.image_h); }

}  // namespace

std::set<std::size_t> lattice_patch_cover(const PatchGrid& grid, const BBox& box) {
  std::set<std::size_t> out;
  for (double y = 0.125; y < grid.image_h; y += 0.25) {
    if (y <= box.y_min || y >= box.y_max) continue;
    for (double x = 0.125; x < grid.image_w; x += 0.25) {
      if (x <= box.x_min || x >= box.x_max) continue;
      out.insert(grid.index(int(y) / grid.patch, int(x) / grid.patch));
    }
  }
  return out;
}

std::set<std::size_t> dense_segment_cover(const PatchGrid& grid, const Segment& s, double step) {
  std::set<std::size_t> out;
  const auto steps = std::max<long>(1, static_cast<long>(std::ceil(s.length / step)));
  for (long k = 0; k <= steps; ++k) {
    const double t = double(k) / double(steps);
    const double x = s.a.x + t * (s.b.x - s.a.x);
    const double y = s.a.y + t * (s.b.y - s.a.y);
    if (x < 0 || y < 0 || x > grid.image_w || y > grid.image_h) continue;
    const int c = std::min(grid.cols - 1, int(x) / grid.patch);
    const int r = std::min(grid.rows - 1, int(y) / grid.patch);
    out.insert(grid.index(r, c));
  }
  return out;
}

std::set<std::size_t> distance_segment_cover(const PatchGrid& grid, const Segment& s, double tol) {
  std::set<std::size_t> out;
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      const double d = segment_rect_distance(s.a, s.b, double(c) * grid.patch, double(r) * grid.patch,
                                             patch_x1(grid, c), patch_y1(grid, r));
      if (d <= tol) out.insert(grid.index(r, c));
    }
  }
  return out;
}

// ----------------------------------------------------------- repetition

std::optional<std::pair<std::string, std::size_t>> brute_tail_repeat(const std::string& buffer,
                                                                     std::size_t min_unit,
                                                                     std::size_t min_count) {
  const std::size_t n = buffer.size();
  for (std::size_t p = min_unit; p * min_count <= n; ++p) {
    const std::string unit = buffer.substr(n - p);
    std::size_t k = 1;
    while ((k + 1) * p <= n && buffer.compare(n - (k + 1) * p, p, unit) == 0) ++k;
    if (k >= min_count) return std::pair{unit, k};
  }
  return std::nullopt;
}

namespace {

bool space(char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; }

std::string squash(const std::string& s) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (space(s[i])) {
      std::size_t j = i;
      while (j < s.size() && space(s[j])) ++j;
      if (!out.empty() && j < s.size()) out += ' ';
      i = j;
    } else {
      out += s[i++];
    }
  }
  return out;
}

/// Text-repeat bookkeeping for one accumulator, replayed from its final text.
void text_repeats(const std::string& text, const TrackerConfig& cfg, FreqTables& t) {
  std::size_t period = 0;
  std::size_t since = 0;
  std::string unit;
  for (std::size_t len = 1; len <= text.size(); ++len) {
    const std::size_t from = len > cfg.window ? len - cfg.window : 0;
    const auto hit = brute_tail_repeat(text.substr(from, len - from), cfg.min_unit, cfg.min_count);
    if (!hit) {
      period = 0;
      continue;
    }
    const std::size_t p = hit->first.size();
    if (p != period) {
      period = p;
      unit = hit->first;
      since = 0;
      t.text_repeat[unit] += hit->second;
    } else if (++since >= p && hit->first == unit) {
      since = 0;
      t.text_repeat[unit] += 1;
    }
  }
}

std::size_t first_trigger(const std::string& doc, const std::string& name) {
  std::string lower(doc.size(), '\0');
  std::transform(doc.begin(), doc.end(), lower.begin(),
                 [](char c) { return char(std::tolower(static_cast<unsigned char>(c))); });
  std::size_t best = std::string::npos;
  for (std::size_t j = lower.find(name); j != std::string::npos; j = lower.find(name, j + 1)) {
    const std::size_t after = j + name.size();
    if (after >= doc.size() || !(doc[after] == '>' || space(doc[after]))) continue;
    best = std::min(best, doc.find('>', after));
  }
  return best;
}

void recount_css(const std::string& css, const TrackerConfig& cfg, FreqTables& t) {
  enum { Sel, Prop, Val } state = Sel;
  std::string sel, prop, val;
  // Characters each text channel saw since its last reset.
  std::string sel_ch, prop_ch, val_ch;
  std::vector<std::string> done;
  const auto close = [&](std::string& ch) {
    done.push_back(ch);
    ch.clear();
  };
  const auto add = [](auto& table, const auto& key) {
    if (!key.empty()) ++table[key];
  };

  for (char ch : css) {
    if (ch == '{') {
      if (state == Prop) sel = prop;
      if (state == Val) sel = val;
      add(t.css_selector, squash(sel));
      val.clear();
      close(val_ch);
      prop.clear();
      close(prop_ch);
      state = Prop;
    } else if (ch == ':' && state != Sel) {
      const std::string p = squash(prop);
      if (!p.empty()) {
        ++t.css_property[p];
        ++t.css_selector_property[{squash(sel), p}];
      }
      state = Val;
      val.clear();
      close(val_ch);
    } else if (ch == ';' && state == Sel) {
      sel.clear();
      close(sel_ch);
    } else if (ch == ';' || ch == '}') {
      add(t.css_value, squash(val));
      val.clear();
      close(val_ch);
      if (ch == '}') {
        state = Sel;
        sel.clear();
        close(sel_ch);
      } else {
        state = Prop;
        prop.clear();
        close(prop_ch);
      }
    } else if (state == Sel) {
      sel += ch;
      sel_ch += ch;
    } else if (state == Prop) {
      prop += ch;
      prop_ch += ch;
    } else {
      val += ch;
      val_ch += ch;
    }
  }
  done.push_back(sel_ch);
  done.push_back(prop_ch);
  done.push_back(val_ch);
  for (const auto& s : done) text_repeats(s, cfg, t);
}

void recount_html(const std::string& html, const TrackerConfig& cfg, FreqTables& t) {
  // Split on '<': piece 0 precedes any tag, every later piece is
  // "tag attrs>content" with stray '>' dropped from the content.
  std::vector<std::string> pieces{""};
  for (char ch : html) {
    if (ch == '<') {
      pieces.emplace_back();
    } else {
      pieces.back() += ch;
    }
  }
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const std::string& piece = pieces[k];
    const std::size_t gt = piece.find('>');
    std::string tag = k == 0 ? std::string() : piece.substr(0, gt);
    std::string content;
    if (gt != std::string::npos) {
      for (char ch : piece.substr(gt + 1))
        if (ch != '>') content += ch;
    }
    text_repeats(content, cfg, t);
    const std::string key = squash(tag);
    if (!key.empty()) ++t.html_quadruple[{key, squash(content)}];
  }
}

}  // namespace

FreqTables batch_recount(const std::string& doc, const TrackerConfig& cfg) {
  FreqTables t;
  const std::size_t npos = std::string::npos;
  std::size_t style_at = first_trigger(doc, "<style");
  const std::size_t body_at = first_trigger(doc, "<body");
  if (style_at != npos && body_at != npos && body_at <= style_at) style_at = npos;

  const std::size_t initial_end = std::min({style_at, body_at, doc.size()});
  text_repeats(doc.substr(0, initial_end), cfg, t);
  if (style_at != npos) {
    const std::size_t end = std::min(body_at, doc.size());
    recount_css(doc.substr(style_at + 1, end - style_at - 1), cfg, t);
  }
  if (body_at != npos) recount_html(doc.substr(body_at + 1), cfg, t);
  return t;
}

// ---------------------------------------------------------------- misc

unsigned __int128 flops_terms(std::uint64_t T, std::uint64_t n, std::uint64_t d, std::uint64_t m) {
  using U = unsigned __int128;
  const U proj = U(4) * n * d * d;
  const U attn = U(2) * n * n * d;
  const U ffn = U(2) * n * d * m;
  return U(T) * (proj + attn + ffn);
}

}  // namespace oracle
