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

#include "uicompress/io.hpp"

#include <array>
#include <cmath>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "uicompress/error.hpp"

namespace uicompress {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed ") + what + ": " + e.what());
  }
}

template <class T>
T get_field(const json& obj, const char* key, const char* what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(std::string(what) + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string(what) + ": field '" + key + "' has the wrong type");
  }
}

std::uint32_t read_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 4)) throw InputError("truncated attention file");
  return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 |
         std::uint32_t{b[3]} << 24;
}

void write_u32(std::ostream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                     static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

std::vector<double> read_f32_block(std::istream& in, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = static_cast<double>(std::bit_cast<float>(read_u32(in)));
    if (!std::isfinite(out[i])) throw InputError("non-finite value in attention file");
  }
  return out;
}

void write_f32_block(std::ostream& out, const std::vector<double>& values) {
  for (double v : values) write_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
}

void expect_magic(std::istream& in, const char (&magic)[5]) {
  char got[4] = {};
  if (!in.read(got, 4) || std::memcmp(got, magic, 4) != 0) {
    throw InputError(std::string("attention file: expected magic ") + magic);
  }
}

std::size_t checked_product(std::initializer_list<std::uint32_t> dims) {
  std::size_t n = 1;
  for (std::uint32_t d : dims) {
    if (d == 0) throw InputError("attention file: zero dimension");
    if (n > (std::size_t{1} << 31) / d) throw InputError("attention file: tensor too large");
    n *= d;
  }
  return n;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

std::vector<BBox> parse_elements(std::string_view text) {
  const json doc = parse_json(text, "elements file");
  if (!doc.is_array()) throw InputError("elements file: expected a JSON array");
  std::vector<BBox> boxes;
  boxes.reserve(doc.size());
  for (const json& e : doc) {
    BBox b;
    b.id = get_field<std::int64_t>(e, "id", "element");
    b.cls = parse_element_class(get_field<std::string>(e, "class", "element"));
    const auto coords = get_field<std::vector<double>>(e, "bbox", "element");
    if (coords.size() != 4) throw InputError("element bbox must have four coordinates");
    b.x_min = coords[0];
    b.y_min = coords[1];
    b.x_max = coords[2];
    b.y_max = coords[3];
    validate(b);
    boxes.push_back(b);
  }
  return boxes;
}

std::string format_elements(const std::vector<BBox>& boxes) {
  json doc = json::array();
  for (const BBox& b : boxes) {
    doc.push_back({{"id", b.id},
                   {"class", std::string(to_string(b.cls))},
                   {"bbox", {b.x_min, b.y_min, b.x_max, b.y_max}}});
  }
  return doc.dump(2) + "\n";
}

TokenMask parse_mask(std::string_view text) {
  const json doc = parse_json(text, "mask file");
  const json grid = get_field<json>(doc, "grid", "mask");
  const int cols = get_field<int>(grid, "cols", "mask grid");
  const int rows = get_field<int>(grid, "rows", "mask grid");
  const int patch = get_field<int>(grid, "patch", "mask grid");
  if (cols < 1 || rows < 1 || patch < 1) throw InputError("mask grid dimensions must be >= 1");
  const auto selected = get_field<std::vector<std::size_t>>(doc, "selected", "mask");
  for (std::size_t i = 1; i < selected.size(); ++i) {
    if (selected[i] <= selected[i - 1]) throw InputError("mask indices must be strictly ascending");
  }
  const PatchGrid g = PatchGrid::make(cols * patch, rows * patch, patch);
  return TokenMask(g, selected);
}

std::string format_mask(const TokenMask& mask) {
  const PatchGrid& g = mask.grid();
  json doc;
  doc["grid"] = {{"cols", g.cols}, {"rows", g.rows}, {"patch", g.patch}};
  doc["selected"] = mask.selected_indices();
  return doc.dump() + "\n";
}

std::vector<double> parse_scores(std::string_view text) {
  std::vector<double> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::istringstream ls(line.substr(first));
    double v = 0.0;
    std::string rest;
    if (!(ls >> v) || (ls >> rest) || !std::isfinite(v)) {
      throw InputError("scores file line " + std::to_string(lineno) + ": expected one number");
    }
    out.push_back(v);
  }
  return out;
}

AttentionMatrices read_attention_matrices(std::istream& in) {
  expect_magic(in, "ATTN");
  AttentionMatrices m;
  const std::uint32_t h = read_u32(in);
  const std::uint32_t n = read_u32(in);
  m.heads = h;
  m.tokens = n;
  m.data = read_f32_block(in, checked_product({h, n, n}));
  return m;
}

QueryKey read_query_key(std::istream& in) {
  expect_magic(in, "QKAT");
  QueryKey qk;
  const std::uint32_t h = read_u32(in);
  const std::uint32_t n = read_u32(in);
  const std::uint32_t d = read_u32(in);
  qk.heads = h;
  qk.tokens = n;
  qk.head_dim = d;
  const std::size_t count = checked_product({h, n, d});
  qk.q = read_f32_block(in, count);
  qk.k = read_f32_block(in, count);
  return qk;
}

AttentionInput read_attention(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  char magic[4] = {};
  if (!in.read(magic, 4)) throw InputError("attention file too short");
  in.seekg(0);
  if (std::memcmp(magic, "ATTN", 4) == 0) return read_attention_matrices(in);
  if (std::memcmp(magic, "QKAT", 4) == 0) return read_query_key(in);
  throw InputError("attention file: unknown magic");
}

void write_attention_matrices(std::ostream& out, const AttentionMatrices& m) {
  out.write("ATTN", 4);
  write_u32(out, static_cast<std::uint32_t>(m.heads));
  write_u32(out, static_cast<std::uint32_t>(m.tokens));
  write_f32_block(out, m.data);
}

void write_query_key(std::ostream& out, const QueryKey& qk) {
  out.write("QKAT", 4);
  write_u32(out, static_cast<std::uint32_t>(qk.heads));
  write_u32(out, static_cast<std::uint32_t>(qk.tokens));
  write_u32(out, static_cast<std::uint32_t>(qk.head_dim));
  write_f32_block(out, qk.q);
  write_f32_block(out, qk.k);
}

std::vector<std::string> parse_vocabulary(std::string_view text) {
  const json doc = parse_json(text, "vocabulary file");
  try {
    return doc.get<std::vector<std::string>>();
  } catch (const json::exception&) {
    throw InputError("vocabulary file: expected a JSON array of strings");
  }
}

MockScenario parse_scenario(std::string_view text) {
  const json doc = parse_json(text, "scenario file");
  const char* what = "scenario";
  MockScenario s;
  s.name = doc.value("name", std::string{});
  s.vocabulary = get_field<std::vector<std::string>>(doc, "vocabulary", what);
  const json script = get_field<json>(doc, "script", what);
  s.script.prefix = script.value("prefix", std::vector<TokenId>{});
  s.script.loop = get_field<std::vector<TokenId>>(script, "loop", "scenario script");
  s.script.suffix = script.value("suffix", std::vector<TokenId>{});
  s.script.loop_repeats = script.value("loop_repeats", std::size_t{0});
  s.loop_logit = get_field<double>(doc, "loop_logit", what);
  s.escape_logit = get_field<double>(doc, "escape_logit", what);
  s.other_logit = get_field<double>(doc, "other_logit", what);
  s.escape_token = get_field<TokenId>(doc, "escape_token", what);
  s.max_tokens = get_field<std::size_t>(doc, "max_tokens", what);
  s.validate();
  return s;
}

std::string format_scenario(const MockScenario& s) {
  json doc;
  doc["name"] = s.name;
  doc["vocabulary"] = s.vocabulary;
  doc["script"] = {{"prefix", s.script.prefix},
                   {"loop", s.script.loop},
                   {"suffix", s.script.suffix},
                   {"loop_repeats", s.script.loop_repeats}};
  doc["loop_logit"] = s.loop_logit;
  doc["escape_logit"] = s.escape_logit;
  doc["other_logit"] = s.other_logit;
  doc["escape_token"] = s.escape_token;
  doc["max_tokens"] = s.max_tokens;
  return doc.dump(2) + "\n";
}

std::string format_transcript(const Transcript& t, const PenaltyConfig& config) {
  json doc;
  doc["scenario"] = t.scenario;
  doc["adts"] = t.adts;
  doc["lambda"] = config.lambda;
  doc["suppress_steps"] = config.steps;
  doc["sign_mode"] = std::string(to_string(config.sign_mode));
  doc["token_count"] = t.token_count();
  doc["hit_cap"] = t.hit_cap;
  doc["escape_step"] = t.escape_step ? json(*t.escape_step) : json(nullptr);
  doc["text"] = t.text;

  json tokens = json::array();
  for (const TranscriptStep& s : t.steps) {
    tokens.push_back(
        {{"step", s.step}, {"token", s.token}, {"surface", s.surface}, {"scales", s.scales}});
  }
  doc["tokens"] = std::move(tokens);

  json events = json::array();
  for (const TranscriptEvent& e : t.events) {
    events.push_back({{"step", e.step},
                      {"kind", std::string(to_string(e.event.kind))},
                      {"key", e.event.key},
                      {"c", e.event.c},
                      {"span", e.event.span_text}});
  }
  doc["events"] = std::move(events);

  json directives = json::array();
  for (const TranscriptDirective& d : t.directives) {
    directives.push_back({{"step", d.step},
                          {"ids", d.directive.target_ids},
                          {"scale", d.directive.scale},
                          {"steps", d.directive.remaining_steps}});
  }
  doc["directives"] = std::move(directives);
  return doc.dump(2) + "\n";
}

std::string format_report(const RunReport& r) {
  json doc;
  doc["n_img"] = r.n_img;
  doc["n_img_kept"] = r.n_img_kept;
  doc["n_text"] = r.n_text;
  doc["n"] = r.n;
  doc["n_after"] = r.n_after;
  doc["kept_fraction"] = r.kept;
  doc["compression_ratio"] = r.removed;
  doc["flops_before"] = r.flops_before;
  doc["flops_after"] = r.flops_after;
  doc["generated_tokens"] = r.generated_tokens;
  if (r.prefill_seconds) doc["prefill_seconds"] = *r.prefill_seconds;
  if (r.total_seconds) doc["total_seconds"] = *r.total_seconds;
  return doc.dump(2) + "\n";
}

TrackRequest parse_track_request(std::string_view line) {
  const json doc = parse_json(line, "track request");
  if (get_field<std::string>(doc, "type", "track request") != "token") {
    throw InputError("track request: type must be \"token\"");
  }
  TrackRequest r;
  r.surface = get_field<std::string>(doc, "surface", "track request");
  r.ids = doc.value("ids", std::vector<TokenId>{});
  return r;
}

std::string format_track_response(const std::vector<WireDirective>& directives) {
  json list = json::array();
  for (const WireDirective& d : directives) {
    list.push_back({{"ids", d.ids}, {"scale", d.scale}, {"steps", d.steps}});
  }
  json doc;
  doc["type"] = "penalty";
  doc["directives"] = std::move(list);
  return doc.dump();
}

}  // namespace uicompress
