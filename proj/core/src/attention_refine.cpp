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

#include "uicompress/attention_refine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uicompress/error.hpp"

namespace uicompress {

namespace {

SquareMatrix average_matrices(const AttentionMatrices& in) {
  const std::size_t n = in.tokens;
  if (in.heads == 0 || n == 0) throw InputError("attention needs H >= 1 and N >= 1");
  if (in.data.size() != in.heads * n * n) throw InputError("attention tensor size mismatch");

  SquareMatrix avg{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t h = 0; h < in.heads; ++h) {
    const double* head = in.data.data() + h * n * n;
    for (std::size_t r = 0; r < n; ++r) {
      double row_sum = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        row_sum += head[r * n + c];
        avg(r, c) += head[r * n + c];
      }
      if (std::abs(row_sum - 1.0) > kRowSumTolerance) {
        throw InputError("attention row " + std::to_string(r) + " of head " + std::to_string(h) +
                         " does not sum to 1");
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(in.heads);
  for (double& v : avg.data) v *= inv;
  return avg;
}

SquareMatrix average_softmax(const QueryKey& in) {
  const std::size_t n = in.tokens;
  const std::size_t d = in.head_dim;
  if (in.heads == 0 || n == 0 || d == 0) throw InputError("query/key needs H, N, D >= 1");
  if (in.q.size() != in.heads * n * d || in.k.size() != in.heads * n * d) {
    throw InputError("query/key tensor size mismatch");
  }

  SquareMatrix avg{n, std::vector<double>(n * n, 0.0)};
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<double> row(n);
  for (std::size_t h = 0; h < in.heads; ++h) {
    const double* q = in.q.data() + h * n * d;
    const double* k = in.k.data() + h * n * d;
    for (std::size_t r = 0; r < n; ++r) {
      double peak = -INFINITY;
      for (std::size_t c = 0; c < n; ++c) {
        double dot = 0.0;
        for (std::size_t e = 0; e < d; ++e) dot += q[r * d + e] * k[c * d + e];
        row[c] = dot * inv_sqrt_d;
        peak = std::max(peak, row[c]);
      }
      double z = 0.0;
      for (double& v : row) {
        v = std::exp(v - peak);
        z += v;
      }
      for (std::size_t c = 0; c < n; ++c) avg(r, c) += row[c] / z;
    }
  }
  const double inv = 1.0 / static_cast<double>(in.heads);
  for (double& v : avg.data) v *= inv;
  return avg;
}

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

}  // namespace

SquareMatrix average_heads(const AttentionInput& input) {
  return std::visit(Overloaded{[](const AttentionMatrices& m) { return average_matrices(m); },
                               [](const QueryKey& qk) { return average_softmax(qk); }},
                    input);
}

ClsScores cls_importance(const SquareMatrix& avg, std::size_t cls_index, TokenRange visual) {
  if (cls_index >= avg.n) throw InputError("CLS index outside the attention matrix");
  if (visual.begin > visual.end || visual.end > avg.n) {
    throw InputError("visual token range outside the attention matrix");
  }
  ClsScores out;
  out.cls_index = cls_index;
  out.scores.reserve(visual.size());
  for (std::size_t c = visual.begin; c < visual.end; ++c) out.scores.push_back(avg(cls_index, c));
  return out;
}

namespace {

// floor(r * n), treating products within rounding noise of an integer as that
// integer so that e.g. 0.3 * 10 yields 3.
std::size_t floor_share(double r, std::size_t n) {
  const double exact = r * double(n);
  const double nearest = std::round(exact);
  if (std::abs(exact - nearest) < 1e-9 * std::max(1.0, exact)) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::floor(exact));
}

}  // namespace

RefineOutcome refine_detailed(const TokenMask& mask, const std::vector<double>& scores,
                              double r, RefineMode mode) {
  if (!(r >= 0.0 && r <= 1.0)) throw InputError("refine ratio must lie in [0, 1]");
  if (scores.size() != mask.size()) {
    throw InputError("score count " + std::to_string(scores.size()) + " does not match " +
                     std::to_string(mask.size()) + " grid tokens");
  }

  std::vector<std::size_t> selected = mask.selected_indices();
  std::vector<std::size_t> unselected = mask.unselected_indices();

  const std::size_t drop_count = std::min(selected.size(), floor_share(r, selected.size()));
  const std::size_t wanted =
      mode == RefineMode::Balanced ? drop_count : floor_share(r, unselected.size());
  const std::size_t add_count = std::min(wanted, unselected.size());

  const auto least_first = [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b] || (scores[a] == scores[b] && a < b);
  };
  const auto most_first = [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
  };
  std::partial_sort(selected.begin(), selected.begin() + static_cast<std::ptrdiff_t>(drop_count),
                    selected.end(), least_first);
  std::partial_sort(unselected.begin(),
                    unselected.begin() + static_cast<std::ptrdiff_t>(add_count),
                    unselected.end(), most_first);

  RefineOutcome out{mask, {}, {}};
  out.dropped.assign(selected.begin(), selected.begin() + static_cast<std::ptrdiff_t>(drop_count));
  out.added.assign(unselected.begin(), unselected.begin() + static_cast<std::ptrdiff_t>(add_count));
  for (std::size_t t : out.dropped) out.mask.set(t, false);
  for (std::size_t t : out.added) out.mask.set(t, true);
  return out;
}

TokenMask refine(const TokenMask& mask, const std::vector<double>& scores, double r,
                 RefineMode mode) {
  return refine_detailed(mask, scores, r, mode).mask;
}

}  // namespace uicompress
