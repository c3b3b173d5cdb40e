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

#include "uicompress/penalty_engine.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "uicompress/error.hpp"
#include "uicompress/log.hpp"

namespace uicompress {
namespace {

RepeatEvent text_event(std::string unit, std::size_t c) {
  return RepeatEvent{RepeatKind::TextRepeat, {unit}, c, unit};
}

std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

const Vocabulary kVocab({"abcd", " efg", "zzz", "  "});

TEST(PenaltyConfigTest, Validation) {
  EXPECT_NO_THROW(PenaltyConfig{}.validate());
  EXPECT_NO_THROW((PenaltyConfig{1.0, 1}.validate()));
  EXPECT_THROW((PenaltyConfig{0.0, 3}.validate()), InputError);
  EXPECT_THROW((PenaltyConfig{1.5, 3}.validate()), InputError);
  EXPECT_THROW((PenaltyConfig{0.5, 0}.validate()), InputError);
  EXPECT_EQ(parse_sign_mode("sign-aware"), SignMode::SignAware);
  EXPECT_EQ(parse_sign_mode(to_string(SignMode::Literal)), SignMode::Literal);
  EXPECT_THROW(parse_sign_mode("both"), InputError);
}

TEST(VocabularyTest, SubstringsOfNormalisedSpan) {
  EXPECT_EQ(kVocab.ids_in("abcd  efg"), (std::vector<TokenId>{0, 1}));
  EXPECT_TRUE(kVocab.ids_in("xyz").empty());
  EXPECT_EQ(kVocab.size(), 4u);
}

TEST(OnRepeatTest, ScaleIsLambdaToTheC) {
  const PenaltyConfig cfg;
  const auto one = on_repeat(text_event("abcd efg", 1), cfg, kVocab);
  ASSERT_TRUE(one);
  EXPECT_EQ(one->scale, 0.5);
  EXPECT_EQ(one->remaining_steps, 3u);
  EXPECT_EQ(one->target_ids, (std::vector<TokenId>{0, 1}));
  EXPECT_FALSE(on_repeat(text_event("abcd", 0), cfg, kVocab));
  EXPECT_EQ(on_repeat(text_event("abcd", 3), cfg, kVocab)->scale, 0.125);
}

TEST(OnRepeatTest, UnmatchedSpanWarnsAndSkips) {
  std::vector<std::string> seen;
  auto previous = set_warning_sink([&](std::string_view m) { seen.emplace_back(m); });
  EXPECT_FALSE(on_repeat(text_event("qqqq", 2), PenaltyConfig{}, kVocab));
  set_warning_sink(std::move(previous));
  EXPECT_EQ(seen.size(), 1u);
}

TEST(ApplyTest, LiteralAndSignAware) {
  const std::vector<double> z{2.0, -1.0};
  DecodeState lit{{0.5, 3, SignMode::Literal}, {{{0}, 0.25, 3}}, 0};
  EXPECT_EQ(uicompress::apply(lit, z), (std::vector<double>{0.5, -1.0}));
  DecodeState aware{{0.5, 3, SignMode::SignAware}, {{{1}, 0.25, 3}}, 0};
  EXPECT_EQ(uicompress::apply(aware, z), (std::vector<double>{2.0, -4.0}));
  DecodeState none;
  EXPECT_EQ(uicompress::apply(none, z), z);
}

TEST(ApplyTest, OverlapsMultiplyAndDirectivesExpire) {
  DecodeState st{{}, {{{0}, 0.5, 2}, {{0, 1}, 0.25, 1}}, 0};
  const std::vector<double> z{8.0, 8.0, 8.0};
  const auto first = apply_detailed(st, z);
  EXPECT_EQ(first.logits, (std::vector<double>{1.0, 2.0, 8.0}));
  EXPECT_EQ(first.scales, (std::vector<double>{0.5, 0.25}));
  EXPECT_EQ(uicompress::apply(st, z), (std::vector<double>{4.0, 8.0, 8.0}));
  EXPECT_EQ(uicompress::apply(st, z), z);
  EXPECT_TRUE(st.active.empty());
}

TEST(ApplyTest, IdsBeyondTheLogitsAreIgnored) {
  DecodeState st{{}, {{{0, 7}, 0.5, 1}}, 0};
  EXPECT_EQ(uicompress::apply(st, std::vector<double>{4.0}), (std::vector<double>{2.0}));
}

TEST(PenalizeTest, UnitScaleIsBitwiseIdentity) {
  std::mt19937_64 rng(4);
  std::vector<double> zs{0.0, -0.0, 1e-310, -1e-310, std::numeric_limits<double>::max(),
                         -std::numeric_limits<double>::infinity()};
  for (int k = 0; k < 1000; ++k) zs.push_back((oracle::unit(rng) - 0.5) * 1e3);
  const double one = std::pow(0.5, 0);
  for (double z : zs) {
    for (auto mode : {SignMode::Literal, SignMode::SignAware})
      EXPECT_EQ(std::bit_cast<std::uint64_t>(penalize(z, one, mode)), std::bit_cast<std::uint64_t>(z));
  }
}

TEST(PenalizeTest, ScalingEveryLogitKeepsArgmax) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> z(2 + rng() % 50);
    for (double& v : z) v = (oracle::unit(rng) - 0.5) * 40;
    std::vector<TokenId> all(z.size());
    for (TokenId i = 0; i < all.size(); ++i) all[i] = i;
    const double scale = std::pow(0.5, double(1 + rng() % 6));
    for (auto mode : {SignMode::Literal, SignMode::SignAware}) {
      DecodeState st{{0.5, 3, mode}, {{all, scale, 1}}, 0};
      EXPECT_EQ(argmax(uicompress::apply(st, z)), argmax(z));
    }
  }
}

}  // namespace
}  // namespace uicompress
