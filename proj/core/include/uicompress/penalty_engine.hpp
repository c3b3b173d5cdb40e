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

/// @file penalty_engine.hpp
/// @brief Exponential logit penalties for repeated output structures.
///
/// A repeat seen c times beyond its first occurrence scales the logits of the
/// tokens that spell the repeated unit by lambda^c for the next s decoding
/// steps. Only those tokens are touched: multiplying every logit by the same
/// positive factor cannot change a greedy argmax.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uicompress/repetition_tracker.hpp"

namespace uicompress {

using TokenId = std::uint32_t;

enum class SignMode {
  Literal,    ///< z * scale for every targeted logit
  SignAware,  ///< shrink positive logits, push negative ones further down
};

std::string_view to_string(SignMode mode) noexcept;
SignMode parse_sign_mode(std::string_view name);

inline constexpr double kDefaultDecay = 0.5;
inline constexpr std::size_t kDefaultSuppressSteps = 3;

struct PenaltyConfig {
  double lambda = kDefaultDecay;
  std::size_t steps = kDefaultSuppressSteps;
  SignMode sign_mode = SignMode::Literal;

  /// Throws InputError unless 0 < lambda <= 1 and steps >= 1.
  void validate() const;
};

struct PenaltyDirective {
  std::vector<TokenId> target_ids;  ///< ascending
  double scale = 1.0;
  std::size_t remaining_steps = 0;

  friend bool operator==(const PenaltyDirective&, const PenaltyDirective&) = default;
};

/// Token id -> surface text, used to find the tokens that spell a repeat.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(const std::vector<std::string>& surfaces);

  /// Registers (or replaces) the surface of @p id.
  void add(TokenId id, std::string_view surface);
  [[nodiscard]] std::size_t size() const noexcept { return normalized_.size(); }

  /// Ids whose whitespace-normalised surface is non-empty and occurs in the
  /// whitespace-normalised @p span.
  [[nodiscard]] std::vector<TokenId> ids_in(std::string_view span) const;

 private:
  std::map<TokenId, std::string> normalized_;
};

/// Directive for a repeat event: scale lambda^c, lifetime `steps`. Returns
/// nothing when c == 0, or when no vocabulary entry spells part of the unit
/// (a warning is logged in that case).
std::optional<PenaltyDirective> on_repeat(const RepeatEvent& event, const PenaltyConfig& config,
                                          const Vocabulary& vocab);

/// Active directives of one decode stream.
struct DecodeState {
  PenaltyConfig config;
  std::vector<PenaltyDirective> active;
  std::size_t step = 0;
};

/// Scales of the directives applied at one step, in activation order.
struct AppliedPenalties {
  std::vector<double> logits;
  std::vector<double> scales;
};

/// Applies every active directive to the targeted logits (overlapping
/// directives multiply), then ages all directives by one step and drops the
/// expired ones.
AppliedPenalties apply_detailed(DecodeState& state, std::span<const double> logits);

std::vector<double> apply(DecodeState& state, std::span<const double> logits);

/// Penalises one logit value with @p scale according to @p mode.
double penalize(double z, double scale, SignMode mode) noexcept;

}  // namespace uicompress
