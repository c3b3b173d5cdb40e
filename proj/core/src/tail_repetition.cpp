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

#include "uicompress/tail_repetition.hpp"

#include <algorithm>

#include "uicompress/error.hpp"

namespace uicompress {

std::optional<TailRepeat> detect_tail_repetition(std::string_view buffer, std::size_t min_unit,
                                                 std::size_t min_count) {
  if (min_unit < 1) throw InputError("min_unit must be >= 1");
  if (min_count < 2) throw InputError("min_count must be >= 2");

  const std::size_t n = buffer.size();
  for (std::size_t p = min_unit; p * min_count <= n; ++p) {
    // Length of the longest p-periodic suffix, minus p.
    std::size_t run = 0;
    while (run + p < n && buffer[n - 1 - run] == buffer[n - 1 - run - p]) ++run;
    const std::size_t k = (run + p) / p;
    if (k >= min_count) return TailRepeat{std::string(buffer.substr(n - p)), k};
  }
  return std::nullopt;
}

TailRepetitionDetector::TailRepetitionDetector(std::size_t min_unit, std::size_t min_count,
                                               std::size_t window)
    : min_unit_(min_unit), min_count_(min_count), window_(window), ring_(window) {
  if (min_unit < 1) throw InputError("min_unit must be >= 1");
  if (min_count < 2) throw InputError("min_count must be >= 2");
  if (window < min_unit * min_count) throw InputError("tail window too small for min_unit");
  run_.assign(window / min_count + 1, 0);
}

void TailRepetitionDetector::reset() {
  total_ = 0;
  std::fill(run_.begin(), run_.end(), 0);
}

char TailRepetitionDetector::back(std::size_t offset) const noexcept {
  return ring_[(total_ - 1 - offset) % window_];
}

std::string TailRepetitionDetector::buffer() const {
  const std::size_t len = std::min(total_, window_);
  std::string out(len, '\0');
  for (std::size_t i = 0; i < len; ++i) out[len - 1 - i] = back(i);
  return out;
}

std::optional<TailRepeat> TailRepetitionDetector::push(char ch) {
  // Compare against s[n - p] before the slot is overwritten: for p == window
  // the incoming character reuses that slot, but such periods are never
  // examined (max period is window / min_count).
  const std::size_t max_p = run_.size() - 1;
  for (std::size_t p = 1; p <= max_p; ++p) {
    if (total_ >= p && ring_[(total_ - p) % window_] == ch) {
      ++run_[p];
    } else {
      run_[p] = 0;
    }
  }
  ring_[total_ % window_] = ch;
  ++total_;

  const std::size_t len = std::min(total_, window_);
  for (std::size_t p = min_unit_; p <= max_p && p * min_count_ <= len; ++p) {
    const std::size_t run = std::min(run_[p], len - p);
    const std::size_t k = (run + p) / p;
    if (k >= min_count_) {
      std::string unit(p, '\0');
      for (std::size_t i = 0; i < p; ++i) unit[p - 1 - i] = back(i);
      return TailRepeat{std::move(unit), k};
    }
  }
  return std::nullopt;
}

}  // namespace uicompress
