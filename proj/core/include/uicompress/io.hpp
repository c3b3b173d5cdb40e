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

/// @file io.hpp
/// @brief File formats shared by the command-line tools and external callers.
///
///  - Elements: JSON array of {"id": int, "class": "text"|"image"|"component",
///    "bbox": [x_min, y_min, x_max, y_max]}.
///  - Mask: {"grid": {"cols", "rows", "patch"}, "selected": [ascending ids]}.
///  - CLS scores: text, one decimal per visual token per line.
///  - Full attention: "ATTN", u32 H, u32 N, then H*N*N f32, little endian.
///  - Query/key: "QKAT", u32 H, u32 N, u32 D, then Q and K (H*N*D f32 each).
///  - Scenario / transcript: JSON mirroring MockScenario / Transcript.
///  - Track protocol: one JSON object per line in each direction.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uicompress/attention_refine.hpp"
#include "uicompress/geometry.hpp"
#include "uicompress/metrics.hpp"
#include "uicompress/mock_decoder.hpp"
#include "uicompress/penalty_engine.hpp"
#include "uicompress/token_grid.hpp"

namespace uicompress {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

std::vector<BBox> parse_elements(std::string_view json);
std::string format_elements(const std::vector<BBox>& boxes);

TokenMask parse_mask(std::string_view json);
std::string format_mask(const TokenMask& mask);

std::vector<double> parse_scores(std::string_view text);

AttentionMatrices read_attention_matrices(std::istream& in);
QueryKey read_query_key(std::istream& in);
/// Reads either binary attention format, dispatching on the magic bytes.
AttentionInput read_attention(const std::filesystem::path& path);
void write_attention_matrices(std::ostream& out, const AttentionMatrices& m);
void write_query_key(std::ostream& out, const QueryKey& qk);

/// JSON array of token surfaces indexed by id.
std::vector<std::string> parse_vocabulary(std::string_view json);

MockScenario parse_scenario(std::string_view json);
std::string format_scenario(const MockScenario& scenario);
std::string format_transcript(const Transcript& transcript, const PenaltyConfig& config);

std::string format_report(const RunReport& report);

/// One generated token as announced by an external decode loop.
struct TrackRequest {
  std::string surface;
  std::vector<TokenId> ids;
};

struct WireDirective {
  std::vector<TokenId> ids;
  double scale = 1.0;
  std::size_t steps = 0;
};

/// Parses {"type":"token","surface":...,"ids":[...]}.
TrackRequest parse_track_request(std::string_view line);
/// Formats {"type":"penalty","directives":[{"ids","scale","steps"}]} (no newline).
std::string format_track_response(const std::vector<WireDirective>& directives);

}  // namespace uicompress
