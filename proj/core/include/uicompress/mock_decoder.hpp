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

/// @file mock_decoder.hpp
/// @brief Deterministic table-driven decoder for exercising repetition
/// suppression end to end without a language model.
///
/// The scenario scripts a prefix, a loop section and a suffix. At each step
/// the next scripted token gets `loop_logit`, the escape token gets
/// `escape_logit` (until it has been emitted once) and every other token
/// gets `other_logit`. Decoding is greedy; ties go to the lower token id.
/// Emitting the scripted token advances the script, emitting the escape token
/// jumps to the suffix, and the run ends when the script is exhausted or
/// `max_tokens` tokens have been produced.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "uicompress/penalty_engine.hpp"
#include "uicompress/repetition_tracker.hpp"

namespace uicompress {

struct MockScript {
  std::vector<TokenId> prefix;
  std::vector<TokenId> loop;
  std::vector<TokenId> suffix;
  /// Loop iterations before moving on to the suffix; 0 loops forever.
  std::size_t loop_repeats = 0;
};

struct MockScenario {
  std::string name;
  std::vector<std::string> vocabulary;
  MockScript script;
  double loop_logit = 10.0;
  double escape_logit = 1.0;
  double other_logit = 0.0;
  TokenId escape_token = 0;
  std::size_t max_tokens = 500;

  /// Throws InputError unless loop_logit > escape_logit > other_logit, the
  /// loop is non-empty and every id is inside the vocabulary.
  void validate() const;
};

struct TranscriptStep {
  std::size_t step = 0;
  TokenId token = 0;
  std::string surface;
  std::vector<double> scales;  ///< directive scales applied at this step
};

struct TranscriptEvent {
  std::size_t step = 0;  ///< step whose token raised the event
  RepeatEvent event;
};

struct TranscriptDirective {
  std::size_t step = 0;  ///< created after this step, first applied at step + 1
  PenaltyDirective directive;
};

struct Transcript {
  std::string scenario;
  bool adts = false;
  std::vector<TranscriptStep> steps;
  std::vector<TranscriptEvent> events;
  std::vector<TranscriptDirective> directives;
  std::string text;
  std::optional<std::size_t> escape_step;
  bool hit_cap = false;

  [[nodiscard]] std::size_t token_count() const noexcept { return steps.size(); }
};

/// Runs the scenario greedily. With @p adts on, the emitted text is tracked
/// and repeat events turn into penalty directives for the following steps.
Transcript simulate(const MockScenario& scenario, bool adts, const PenaltyConfig& penalty = {},
                    const TrackerConfig& tracker = {});

}  // namespace uicompress
