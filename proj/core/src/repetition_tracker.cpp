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

#include "uicompress/repetition_tracker.hpp"

#include <cctype>

namespace uicompress {

std::string_view to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::Initial:
      return "INITIAL";
    case Phase::Css:
      return "CSS";
    case Phase::Html:
      return "HTML";
  }
  return "INITIAL";
}

std::string_view to_string(RepeatKind kind) noexcept {
  switch (kind) {
    case RepeatKind::CssSelectorProperty:
      return "css_selector_property";
    case RepeatKind::HtmlQuadruple:
      return "html_quadruple";
    case RepeatKind::TextRepeat:
      return "text_repeat";
    case RepeatKind::CssSelector:
      return "css_selector";
    case RepeatKind::CssProperty:
      return "css_property";
    case RepeatKind::CssValue:
      return "css_value";
  }
  return "text_repeat";
}

namespace {

bool is_space(char ch) noexcept { return std::isspace(static_cast<unsigned char>(ch)) != 0; }

bool ends_with(std::string_view s, std::string_view suffix) noexcept {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::size_t bump(std::map<std::string, std::size_t>& table, const std::string& key) {
  return ++table[key];
}

std::size_t bump(std::map<KeyPair, std::size_t>& table, KeyPair key) {
  return ++table[std::move(key)];
}

void emit_if_repeated(std::vector<RepeatEvent>& out, RepeatKind kind, std::size_t count,
                      std::vector<std::string> key, std::string span) {
  if (count > 1) out.push_back(RepeatEvent{kind, std::move(key), count - 1, std::move(span)});
}

void count_string(std::map<std::string, std::size_t>& table, RepeatKind kind,
                  const std::string& key, std::vector<RepeatEvent>& out) {
  if (key.empty()) return;
  emit_if_repeated(out, kind, bump(table, key), {key}, key);
}

}  // namespace

std::string normalize_ws(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool gap = false;
  for (char ch : text) {
    if (is_space(ch)) {
      gap = !out.empty();
    } else {
      if (gap) out.push_back(' ');
      gap = false;
      out.push_back(ch);
    }
  }
  return out;
}

TextChannel::TextChannel(const TrackerConfig& config)
    : detector_(config.min_unit, config.min_count, config.window) {}

void TextChannel::reset() {
  detector_.reset();
  period_ = 0;
  since_aligned_ = 0;
  unit_.clear();
}

void TextChannel::push(char ch, FreqTables& tables, std::vector<RepeatEvent>& out) {
  auto hit = detector_.push(ch);
  if (!hit) {
    period_ = 0;
    return;
  }

  const std::size_t p = hit->unit.size();
  std::size_t added = 0;
  if (p != period_) {
    period_ = p;
    unit_ = hit->unit;
    since_aligned_ = 0;
    added = hit->count;
  } else {
    ++since_aligned_;
    if (since_aligned_ < p || hit->unit != unit_) return;
    since_aligned_ = 0;
    added = 1;
  }
  const std::size_t count = (tables.text_repeat[unit_] += added);
  out.push_back(RepeatEvent{RepeatKind::TextRepeat, {unit_}, count - 1, unit_});
}

ParserState::ParserState(const TrackerConfig& config)
    : tail(config),
      selector_text(config),
      property_text(config),
      value_text(config),
      content_text(config) {}

void css_feed(ParserState& st, FreqTables& tables, char ch, std::vector<RepeatEvent>& out) {
  const auto enter_property = [&] {
    st.css_sub = CssSub::Property;
    st.cur_property.clear();
    st.property_text.reset();
  };

  switch (ch) {
    case '{': {
      // Nested block (e.g. inside an at-rule): the pending text names it.
      if (st.css_sub == CssSub::Property) st.cur_selector = st.cur_property;
      if (st.css_sub == CssSub::Value) st.cur_selector = st.cur_value;
      count_string(tables.css_selector, RepeatKind::CssSelector, normalize_ws(st.cur_selector),
                   out);
      st.cur_value.clear();
      st.value_text.reset();
      enter_property();
      return;
    }
    case ':': {
      // Pseudo-classes and pseudo-elements belong to the selector.
      if (st.css_sub == CssSub::Selector) break;
      const std::string property = normalize_ws(st.cur_property);
      if (!property.empty()) {
        count_string(tables.css_property, RepeatKind::CssProperty, property, out);
        const std::string selector = normalize_ws(st.cur_selector);
        const std::size_t n = bump(tables.css_selector_property, KeyPair{selector, property});
        emit_if_repeated(out, RepeatKind::CssSelectorProperty, n, {selector, property},
                         selector.empty() ? property : selector + " " + property);
      }
      st.css_sub = CssSub::Value;
      st.cur_value.clear();
      st.value_text.reset();
      return;
    }
    case ';':
    case '}': {
      if (ch == ';' && st.css_sub == CssSub::Selector) {
        // Statement outside any block, e.g. an @import.
        st.cur_selector.clear();
        st.selector_text.reset();
        return;
      }
      count_string(tables.css_value, RepeatKind::CssValue, normalize_ws(st.cur_value), out);
      st.cur_value.clear();
      st.value_text.reset();
      if (ch == '}') {
        st.css_sub = CssSub::Selector;
        st.cur_selector.clear();
        st.selector_text.reset();
      } else {
        enter_property();
      }
      return;
    }
    default:
      break;
  }

  switch (st.css_sub) {
    case CssSub::Selector:
      st.cur_selector.push_back(ch);
      st.selector_text.push(ch, tables, out);
      break;
    case CssSub::Property:
      st.cur_property.push_back(ch);
      st.property_text.push(ch, tables, out);
      break;
    case CssSub::Value:
      st.cur_value.push_back(ch);
      st.value_text.push(ch, tables, out);
      break;
  }
}

namespace {

void flush_quadruple(ParserState& st, FreqTables& tables, std::vector<RepeatEvent>& out) {
  const std::string tag = normalize_ws(st.cur_tag_property_value);
  if (!tag.empty()) {
    std::string content = normalize_ws(st.cur_content);
    const std::size_t n = bump(tables.html_quadruple, KeyPair{tag, content});
    std::string span = "<" + tag + ">" + content;
    emit_if_repeated(out, RepeatKind::HtmlQuadruple, n, {tag, std::move(content)},
                     std::move(span));
  }
  st.cur_tag_property_value.clear();
  st.cur_content.clear();
  st.content_text.reset();
}

}  // namespace

void html_feed(ParserState& st, FreqTables& tables, char ch, std::vector<RepeatEvent>& out) {
  if (ch == '<') {
    st.html_sub = HtmlSub::TagPropertyValue;
    flush_quadruple(st, tables, out);
    return;
  }
  if (ch == '>') {
    st.html_sub = HtmlSub::Content;
    return;
  }
  switch (st.html_sub) {
    case HtmlSub::TagPropertyValue:
      st.cur_tag_property_value.push_back(ch);
      break;
    case HtmlSub::Content:
      st.cur_content.push_back(ch);
      st.content_text.push(ch, tables, out);
      break;
    case HtmlSub::None:
      break;
  }
}

RepetitionTracker::RepetitionTracker(TrackerConfig config) : config_(config), state_(config) {}

std::vector<RepeatEvent> RepetitionTracker::feed(std::string_view chunk) {
  std::vector<RepeatEvent> out;
  for (char ch : chunk) feed_char(ch, out);
  return out;
}

std::vector<RepeatEvent> RepetitionTracker::finish() {
  std::vector<RepeatEvent> out;
  if (state_.phase == Phase::Html) flush_quadruple(state_, tables_, out);
  return out;
}

void RepetitionTracker::feed_char(char ch, std::vector<RepeatEvent>& out) {
  ParserState& st = state_;
  bool consumed = false;
  if (ch == '>') {
    const bool style = st.style_pending || ends_with(st.recent, "<style");
    const bool body = st.body_pending || ends_with(st.recent, "<body");
    st.style_pending = false;
    st.body_pending = false;
    if (style && st.phase == Phase::Initial) {
      st.phase = Phase::Css;
      consumed = true;
    }
    if (body && st.phase != Phase::Html) {
      st.phase = Phase::Html;
      consumed = true;
    }
  } else if (is_space(ch)) {
    if (ends_with(st.recent, "<style")) st.style_pending = true;
    if (ends_with(st.recent, "<body")) st.body_pending = true;
  }

  st.recent.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (st.recent.size() > 6) st.recent.erase(0, st.recent.size() - 6);

  if (consumed) return;
  switch (st.phase) {
    case Phase::Initial:
      st.tail.push(ch, tables_, out);
      break;
    case Phase::Css:
      css_feed(st, tables_, ch, out);
      break;
    case Phase::Html:
      html_feed(st, tables_, ch, out);
      break;
  }
}

}  // namespace uicompress
