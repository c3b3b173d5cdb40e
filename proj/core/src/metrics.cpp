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

#include "uicompress/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uicompress/error.hpp"

namespace uicompress {

namespace {

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("FLOP count overflows 64 bits");
  return r;
}

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("FLOP count overflows 64 bits");
  return r;
}

}  // namespace

std::uint64_t flops(const ModelShape& s, std::uint64_t n) {
  if (s.layers == 0 || s.hidden == 0 || s.ffn == 0) throw InputError("model dimensions must be >= 1");
  if (n == 0) throw InputError("sequence length must be >= 1");
  const std::uint64_t d = s.hidden;
  const std::uint64_t projections = mul(4, mul(n, mul(d, d)));
  const std::uint64_t attention = mul(2, mul(mul(n, n), d));
  const std::uint64_t ffn = mul(2, mul(mul(n, d), s.ffn));
  return mul(s.layers, add(add(projections, attention), ffn));
}

std::size_t kept_token_count(double kept_fraction, std::size_t total) {
  if (!(kept_fraction >= 0.0 && kept_fraction <= 1.0)) {
    throw InputError("kept fraction must lie in [0, 1]");
  }
  const double exact = kept_fraction * static_cast<double>(total);
  // Absorb representation error when the fraction came from count / total.
  const double nearest = std::round(exact);
  if (std::abs(exact - nearest) < 1e-9 * std::max(1.0, exact)) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::floor(exact));
}

RunReport report(const ReportInputs& in) {
  if (in.kept_tokens > in.image_tokens) throw InputError("kept tokens exceed image tokens");
  RunReport r;
  r.n_img = in.image_tokens;
  r.n_img_kept = in.kept_tokens;
  r.n_text = in.text_tokens;
  r.n = in.image_tokens + in.text_tokens;
  r.n_after = in.kept_tokens + in.text_tokens;
  if (in.image_tokens > 0) {
    r.kept = static_cast<double>(in.kept_tokens) / static_cast<double>(in.image_tokens);
    r.removed = 1.0 - r.kept;
  }
  if (r.n > 0) r.flops_before = flops(in.shape, r.n);
  if (r.n_after > 0) r.flops_after = flops(in.shape, r.n_after);
  r.generated_tokens = in.generated_tokens;
  r.prefill_seconds = in.prefill_seconds;
  r.total_seconds = in.total_seconds;
  return r;
}

}  // namespace uicompress
