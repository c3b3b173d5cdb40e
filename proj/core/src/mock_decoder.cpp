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

#include "uicompress/mock_decoder.hpp"

#include <algorithm>
#include <string>

#include "uicompress/error.hpp"

namespace uicompress {

void MockScenario::validate() const {
  if (vocabulary.empty()) throw InputError("scenario vocabulary is empty");
  if (script.loop.empty()) throw InputError("scenario loop section is empty");
  if (!(loop_logit > escape_logit && escape_logit > other_logit)) {
    throw InputError("scenario logits must satisfy loop > escape > other");
  }
  const auto check = [&](TokenId id) {
    if (id >= vocabulary.size()) {
      throw InputError("token id " + std::to_string(id) + " outside the vocabulary");
    }
  };
  check(escape_token);
  for (const auto* part : {&script.prefix, &script.loop, &script.suffix}) {
    std::for_each(part->begin(), part->end(), check);
  }
}

namespace {

enum class Stage { Prefix, Loop, Suffix, Done };

class ScriptCursor {
 public:
  explicit ScriptCursor(const MockScript& script) : script_(script) { settle(); }

  [[nodiscard]] Stage stage() const noexcept { return stage_; }

  [[nodiscard]] std::optional<TokenId> next() const {
    switch (stage_) {
      case Stage::Prefix:
        return script_.prefix[pos_];
      case Stage::Loop:
        return script_.loop[pos_];
      case Stage::Suffix:
        return script_.suffix[pos_];
      case Stage::Done:
        break;
    }
    return std::nullopt;
  }

  void advance() {
    ++pos_;
    if (stage_ == Stage::Loop && pos_ == script_.loop.size()) {
      pos_ = 0;
      ++iterations_;
      if (script_.loop_repeats != 0 && iterations_ == script_.loop_repeats) stage_ = Stage::Suffix;
    }
    settle();
  }

  void escape() {
    stage_ = Stage::Suffix;
    pos_ = 0;
    settle();
  }

 private:
  // Skips exhausted or empty sections.
  void settle() {
    if (stage_ == Stage::Prefix && pos_ >= script_.prefix.size()) {
      stage_ = Stage::Loop;
      pos_ = 0;
    }
    if (stage_ == Stage::Suffix && pos_ >= script_.suffix.size()) stage_ = Stage::Done;
  }

  const MockScript& script_;
  Stage stage_ = Stage::Prefix;
  std::size_t pos_ = 0;
  std::size_t iterations_ = 0;
};

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

Transcript simulate(const MockScenario& scenario, bool adts, const PenaltyConfig& penalty,
                    const TrackerConfig& tracker_config) {
  scenario.validate();
  penalty.validate();

  Transcript out;
  out.scenario = scenario.name;
  out.adts = adts;

  const Vocabulary vocab(scenario.vocabulary);
  RepetitionTracker tracker(tracker_config);
  DecodeState decode{penalty, {}, 0};
  ScriptCursor cursor(scenario.script);
  std::vector<double> base(scenario.vocabulary.size());

  for (std::size_t step = 0; step < scenario.max_tokens; ++step) {
    const auto scripted = cursor.next();
    if (!scripted) return out;

    std::fill(base.begin(), base.end(), scenario.other_logit);
    const bool escapable = !out.escape_step &&
                           (cursor.stage() == Stage::Prefix || cursor.stage() == Stage::Loop);
    if (escapable) base[scenario.escape_token] = scenario.escape_logit;
    base[*scripted] = scenario.loop_logit;

    TranscriptStep record;
    record.step = step;
    std::vector<double> logits = base;
    if (adts) {
      AppliedPenalties applied = apply_detailed(decode, base);
      logits = std::move(applied.logits);
      record.scales = std::move(applied.scales);
    }

    const auto token = static_cast<TokenId>(argmax(logits));
    record.token = token;
    record.surface = scenario.vocabulary[token];
    out.text += record.surface;

    if (token == *scripted) {
      cursor.advance();
    } else if (escapable && token == scenario.escape_token) {
      out.escape_step = step;
      cursor.escape();
    }

    if (adts) {
      for (RepeatEvent& ev : tracker.feed(record.surface)) {
        if (auto d = on_repeat(ev, penalty, vocab)) {
          decode.active.push_back(*d);
          out.directives.push_back(TranscriptDirective{step, std::move(*d)});
        }
        out.events.push_back(TranscriptEvent{step, std::move(ev)});
      }
    }
    out.steps.push_back(std::move(record));
  }
  out.hit_cap = cursor.next().has_value();
  return out;
}

}  // namespace uicompress
