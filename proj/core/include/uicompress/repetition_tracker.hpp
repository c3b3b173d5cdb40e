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

/// @file repetition_tracker.hpp
/// @brief Streaming repetition bookkeeping for generated HTML/CSS.
///
/// The tracker consumes decoded text one character at a time, so token
/// boundaries never matter. Until an opening `<style` tag is seen only plain
/// text repetition is tracked; inside the style section a selector / property
/// / value state machine counts CSS structures; after `<body` every
/// `<tag attrs>content` unit is counted. Structures seen more than once raise
/// RepeatEvents carrying the repetition count.
///
/// Whitespace is not significant for structural identity: every key is
/// trimmed and internal whitespace runs are collapsed to one space.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uicompress/tail_repetition.hpp"

namespace uicompress {

enum class Phase { Initial, Css, Html };
enum class CssSub { Selector, Property, Value };
enum class HtmlSub { None, TagPropertyValue, Content };

enum class RepeatKind {
  CssSelectorProperty,
  HtmlQuadruple,
  TextRepeat,
  CssSelector,
  CssProperty,
  CssValue,
};

std::string_view to_string(Phase phase) noexcept;
std::string_view to_string(RepeatKind kind) noexcept;

struct RepeatEvent {
  RepeatKind kind = RepeatKind::TextRepeat;
  /// One part for string keys, two for (selector, property) and
  /// (tag_property_value, content).
  std::vector<std::string> key;
  /// Occurrences beyond the first; always >= 1.
  std::size_t c = 0;
  /// Surface text of the repeated unit, used to pick penalised tokens.
  std::string span_text;

  friend bool operator==(const RepeatEvent&, const RepeatEvent&) = default;
};

using KeyPair = std::pair<std::string, std::string>;

struct FreqTables {
  std::map<std::string, std::size_t> css_selector;
  std::map<std::string, std::size_t> css_property;
  std::map<std::string, std::size_t> css_value;
  std::map<KeyPair, std::size_t> css_selector_property;
  std::map<KeyPair, std::size_t> html_quadruple;
  std::map<std::string, std::size_t> text_repeat;

  friend bool operator==(const FreqTables&, const FreqTables&) = default;
};

struct TrackerConfig {
  std::size_t min_unit = kDefaultMinUnit;
  std::size_t min_count = kDefaultMinCount;
  std::size_t window = kDefaultTailWindow;
};

/// Tail-repetition detection over one growing accumulator.
///
/// A repetition run is a stretch where the detector keeps reporting the same
/// period. Its first report counts every repeat seen so far; afterwards one
/// more repeat is counted each time another full period has passed and the
/// tail lines up with the unit that opened the run.
class TextChannel {
 public:
  explicit TextChannel(const TrackerConfig& config);

  void push(char ch, FreqTables& tables, std::vector<RepeatEvent>& out);
  void reset();

 private:
  TailRepetitionDetector detector_;
  std::size_t period_ = 0;
  std::size_t since_aligned_ = 0;
  std::string unit_;
};

struct ParserState {
  explicit ParserState(const TrackerConfig& config = {});

  Phase phase = Phase::Initial;
  CssSub css_sub = CssSub::Selector;
  HtmlSub html_sub = HtmlSub::None;

  std::string cur_selector;
  std::string cur_property;
  std::string cur_value;
  std::string cur_tag_property_value;
  std::string cur_content;

  /// Running-text channel used before any style/body trigger.
  TextChannel tail;
  TextChannel selector_text;
  TextChannel property_text;
  TextChannel value_text;
  TextChannel content_text;

  // Trigger recognition: last few characters (lower-cased) and whether an
  // opening tag name has been seen but its closing '>' has not.
  std::string recent;
  bool style_pending = false;
  bool body_pending = false;
};

/// Trims and collapses whitespace runs to a single space.
std::string normalize_ws(std::string_view text);

/// One character of the style section.
void css_feed(ParserState& state, FreqTables& tables, char ch, std::vector<RepeatEvent>& out);
/// One character of the body section.
void html_feed(ParserState& state, FreqTables& tables, char ch, std::vector<RepeatEvent>& out);

/// Per-stream tracker. Not thread-safe; use one instance per decode stream.
class RepetitionTracker {
 public:
  explicit RepetitionTracker(TrackerConfig config = {});

  /// Consumes decoded text and returns the events it raised, in order.
  std::vector<RepeatEvent> feed(std::string_view chunk);
  /// Counts the trailing HTML unit that no following '<' has closed yet.
  std::vector<RepeatEvent> finish();

  [[nodiscard]] const FreqTables& tables() const noexcept { return tables_; }
  [[nodiscard]] const ParserState& state() const noexcept { return state_; }
  [[nodiscard]] const TrackerConfig& config() const noexcept { return config_; }

 private:
  void feed_char(char ch, std::vector<RepeatEvent>& out);

  TrackerConfig config_;
  ParserState state_;
  FreqTables tables_;
};

}  // namespace uicompress
