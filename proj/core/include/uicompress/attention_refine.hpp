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

/// @file attention_refine.hpp
/// @brief Attention-guided refinement of a layout-derived token selection.
///
/// Importance of a visual token is the attention the CLS token pays to it,
/// averaged over heads. Refinement then swaps the least important selected
/// tokens for the most important unselected ones.

#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "uicompress/token_grid.hpp"

namespace uicompress {

/// Per-head attention probabilities, H x N x N row-major.
struct AttentionMatrices {
  std::size_t heads = 0;
  std::size_t tokens = 0;
  std::vector<double> data;
};

/// Per-head queries and keys, each H x N x D row-major.
struct QueryKey {
  std::size_t heads = 0;
  std::size_t tokens = 0;
  std::size_t head_dim = 0;
  std::vector<double> q;
  std::vector<double> k;
};

using AttentionInput = std::variant<AttentionMatrices, QueryKey>;

/// Dense row-major N x N matrix.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  [[nodiscard]] double operator()(std::size_t r, std::size_t c) const { return data[r * n + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data[r * n + c]; }
};

inline constexpr double kRowSumTolerance = 1e-5;

/// Mean over heads of softmax(Q K^T / sqrt(D)) for QueryKey input, or of the
/// supplied matrices. Throws InputError on inconsistent dimensions or, for
/// matrices, on a row that does not sum to 1 within kRowSumTolerance.
SquareMatrix average_heads(const AttentionInput& input);

/// Half-open token range [begin, end).
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  [[nodiscard]] std::size_t size() const noexcept { return end - begin; }
};

struct ClsScores {
  std::vector<double> scores;
  std::size_t cls_index = 0;
};

inline constexpr std::size_t kDefaultClsIndex = 0;

/// Row `cls_index` of the averaged matrix restricted to `visual`, in token
/// order. Throws InputError for indices outside the matrix.
ClsScores cls_importance(const SquareMatrix& avg, std::size_t cls_index, TokenRange visual);

enum class RefineMode {
  Balanced,  ///< add as many tokens as were dropped
  Literal,   ///< add r * |U| tokens
};

inline constexpr double kDefaultRefineRatio = 0.10;

struct RefineOutcome {
  TokenMask mask;
  std::vector<std::size_t> dropped;  ///< ascending score, then index
  std::vector<std::size_t> added;    ///< descending score, then index
};

/// Drops floor(r * |S|) lowest-scoring selected tokens and adds the
/// highest-scoring unselected ones (floor(r * |S|) in Balanced mode,
/// floor(r * |U|) in Literal mode, clamped to |U|). Equal scores favour the
/// lower token index for both operations.
/// Throws InputError when r is outside [0, 1] or the score count differs
/// from the grid size.
RefineOutcome refine_detailed(const TokenMask& mask, const std::vector<double>& scores,
                              double r, RefineMode mode = RefineMode::Balanced);

TokenMask refine(const TokenMask& mask, const std::vector<double>& scores, double r,
                 RefineMode mode = RefineMode::Balanced);

}  // namespace uicompress
