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
#include <cstdint>
#include <optional>

namespace uicompress {

/// Decoder-only transformer dimensions that drive the cost model.
struct ModelShape {
  std::uint64_t layers = 32;    // T
  std::uint64_t hidden = 4096;  // d
  std::uint64_t ffn = 11008;    // m
};

/// Prefill-equivalent cost of one forward pass over n tokens:
/// T * (4 n d^2 + 2 n^2 d + 2 n d m).
/// Throws InputError when a dimension or n is zero, std::overflow_error when
/// the count does not fit in 64 bits.
std::uint64_t flops(const ModelShape& shape, std::uint64_t n);

struct ReportInputs {
  ModelShape shape;
  std::size_t image_tokens = 0;  ///< visual tokens before compression
  std::size_t kept_tokens = 0;   ///< visual tokens after compression
  std::size_t text_tokens = 0;
  std::size_t generated_tokens = 0;
  std::optional<double> prefill_seconds;
  std::optional<double> total_seconds;
};

struct RunReport {
  std::size_t n_img = 0;         ///< original visual tokens
  std::size_t n_img_kept = 0;
  std::size_t n_text = 0;
  std::size_t n = 0;             ///< n_img + n_text
  std::size_t n_after = 0;       ///< n_img_kept + n_text
  double kept = 1.0;
  double removed = 0.0;
  std::uint64_t flops_before = 0;
  std::uint64_t flops_after = 0;
  std::size_t generated_tokens = 0;
  std::optional<double> prefill_seconds;
  std::optional<double> total_seconds;
};

RunReport report(const ReportInputs& in);

/// floor(kept_fraction * total), robust to the fraction being a rounded
/// quotient of integers.
std::size_t kept_token_count(double kept_fraction, std::size_t total);

}  // namespace uicompress
