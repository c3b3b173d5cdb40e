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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uicompress {

struct TailRepeat {
  std::string unit;
  std::size_t count = 0;

  friend bool operator==(const TailRepeat&, const TailRepeat&) = default;
};

inline constexpr std::size_t kDefaultMinUnit = 4;
inline constexpr std::size_t kDefaultMinCount = 2;
inline constexpr std::size_t kDefaultTailWindow = 2048;

/// Finds the shortest unit of at least @p min_unit characters such that
/// @p buffer ends with that unit repeated at least @p min_count times, and
/// reports the maximal repeat count for it. Quadratic; use TailRepetitionDetector
/// on streams.
std::optional<TailRepeat> detect_tail_repetition(std::string_view buffer,
                                                 std::size_t min_unit = kDefaultMinUnit,
                                                 std::size_t min_count = kDefaultMinCount);

/// Streaming form of detect_tail_repetition over the last `window`
/// characters of everything pushed so far.
///
/// For each period p the detector keeps the number of trailing positions i
/// with s[i] == s[i - p]; the buffer ends with a p-periodic run of length
/// run[p] + p. Each push costs O(window).
class TailRepetitionDetector {
 public:
  explicit TailRepetitionDetector(std::size_t min_unit = kDefaultMinUnit,
                                  std::size_t min_count = kDefaultMinCount,
                                  std::size_t window = kDefaultTailWindow);

  /// Appends one character and returns the detection for the new tail.
  std::optional<TailRepeat> push(char ch);
  void reset();

  /// Current window contents (at most `window` characters).
  [[nodiscard]] std::string buffer() const;
  [[nodiscard]] std::size_t window() const noexcept { return window_; }

 private:
  [[nodiscard]] char back(std::size_t offset) const noexcept;

  std::size_t min_unit_;
  std::size_t min_count_;
  std::size_t window_;
  std::vector<char> ring_;
  std::size_t total_ = 0;
  std::vector<std::size_t> run_;  // indexed by period
};

}  // namespace uicompress
