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

#include "uicompress/penalty_engine.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "uicompress/error.hpp"
#include "uicompress/log.hpp"

namespace uicompress {

std::string_view to_string(SignMode mode) noexcept {
  return mode == SignMode::Literal ? "literal" : "sign-aware";
}

SignMode parse_sign_mode(std::string_view name) {
  if (name == "literal") return SignMode::Literal;
  if (name == "sign-aware" || name == "signaware") return SignMode::SignAware;
  throw InputError("unknown sign mode '" + std::string(name) + "'");
}

void PenaltyConfig::validate() const {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw InputError("lambda must lie in (0, 1]");
  if (steps < 1) throw InputError("suppression steps must be >= 1");
}

Vocabulary::Vocabulary(const std::vector<std::string>& surfaces) {
  for (std::size_t i = 0; i < surfaces.size(); ++i) add(static_cast<TokenId>(i), surfaces[i]);
}

void Vocabulary::add(TokenId id, std::string_view surface) {
  normalized_[id] = normalize_ws(surface);
}

std::vector<TokenId> Vocabulary::ids_in(std::string_view span) const {
  const std::string haystack = normalize_ws(span);
  std::vector<TokenId> ids;
  for (const auto& [id, text] : normalized_) {
    if (!text.empty() && haystack.find(text) != std::string::npos) ids.push_back(id);
  }
  return ids;
}

std::optional<PenaltyDirective> on_repeat(const RepeatEvent& event, const PenaltyConfig& config,
                                          const Vocabulary& vocab) {
  if (event.c == 0) return std::nullopt;
  PenaltyDirective d;
  d.target_ids = vocab.ids_in(event.span_text);
  if (d.target_ids.empty()) {
    warn("no vocabulary entry spells repeated unit '" + event.span_text + "'; penalty dropped");
    return std::nullopt;
  }
  d.scale = std::pow(config.lambda, static_cast<double>(event.c));
  d.remaining_steps = config.steps;
  return d;
}

double penalize(double z, double scale, SignMode mode) noexcept {
  if (mode == SignMode::Literal || z > 0.0) return z * scale;
  if (z < 0.0) return z / scale;
  return z;
}

AppliedPenalties apply_detailed(DecodeState& state, std::span<const double> logits) {
  AppliedPenalties out{std::vector<double>(logits.begin(), logits.end()), {}};
  for (const PenaltyDirective& d : state.active) {
    if (d.remaining_steps == 0) continue;
    out.scales.push_back(d.scale);
    for (TokenId id : d.target_ids) {
      if (id < out.logits.size()) out.logits[id] = penalize(out.logits[id], d.scale, state.config.sign_mode);
    }
  }
  std::erase_if(state.active, [](PenaltyDirective& d) {
    if (d.remaining_steps > 0) --d.remaining_steps;
    return d.remaining_steps == 0;
  });
  ++state.step;
  return out;
}

std::vector<double> apply(DecodeState& state, std::span<const double> logits) {
  return apply_detailed(state, logits).logits;
}

}  // namespace uicompress
